// Copyright 2026 The randcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace randcert {

/** Operand shapes do not agree (matrix sizes, subsystem lists). */
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/** A documented precondition on a value was violated. */
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/** A scalar parameter lies outside its admissible range. */
class DomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/** The correlation matrix is too ill-conditioned to invert reliably. */
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double kappa)
      : std::runtime_error(what), kappa_(kappa) {}
  double kappa() const noexcept { return kappa_; }

 private:
  double kappa_;
};

/** Coefficients for a dilated POVM break a positivity or sum constraint. */
class ConstraintError : public std::invalid_argument {
 public:
  ConstraintError(const std::string& what, double residual)
      : std::invalid_argument(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/** No outcome pair admits a zeroing attack. */
class AttackDegenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace randcert
