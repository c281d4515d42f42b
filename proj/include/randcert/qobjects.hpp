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

/**
 * Quantum domain objects: the partially entangled two-qubit state, +-1
 * observables, qubit POVMs and their stock constructions.
 *
 * Pauli convention: Z = diag(1,-1), X = [[0,1],[1,0]], Y = [[0,-i],[i,0]],
 * so that Y|0> = i|1>.
 */

#include <array>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "randcert/matkernel.hpp"

namespace randcert {

namespace pauli {
CMat I();
CMat X();
CMat Y();
CMat Z();
/// (I, X, Y, Z) in that order.
std::array<CMat, 4> basis();
}  // namespace pauli

/** Schmidt angle of the shared state, restricted to (0, pi/2]. */
class Angle {
 public:
  explicit Angle(double radians);
  double radians() const noexcept { return radians_; }
  double cos() const;
  double sin() const;

  static Angle right() { return Angle(std::numbers::pi / 2); }

 private:
  double radians_;
};

/** `n` angles evenly spaced over (0.01, pi/2], the last one being pi/2. */
std::vector<Angle> theta_grid(std::size_t n, double lower = 0.01);

/** Density operator with its subsystem layout. Validated on construction. */
class QState {
 public:
  QState(CMat rho, SubsystemShape shape);

  const CMat& rho() const noexcept { return rho_; }
  const SubsystemShape& shape() const noexcept { return shape_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }

  static QState pure(const CVec& ket, SubsystemShape shape);

 private:
  CMat rho_;
  SubsystemShape shape_;
};

/** Hermitian observable with O^2 = I. */
class Dichotomic {
 public:
  Dichotomic(CMat op, std::string label);

  const CMat& op() const noexcept { return op_; }
  const std::string& label() const noexcept { return label_; }

 private:
  CMat op_;
  std::string label_;
};

/**
 * Ordered POVM elements. May be invalid (see povm_validity); when kets are
 * present each element equals |k><k| for its (subnormalised) ket.
 */
class Povm {
 public:
  Povm() = default;
  static Povm from_elements(std::vector<CMat> elements);
  /// Builds |k><k| elements; kets get the first-nonzero-amplitude-positive
  /// phase convention.
  static Povm from_kets(std::vector<CVec> kets);

  const std::vector<CMat>& elements() const noexcept { return elements_; }
  const std::optional<std::vector<CVec>>& kets() const noexcept {
    return kets_;
  }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t dim() const;
  const CMat& operator[](std::size_t a) const { return elements_.at(a); }

 private:
  std::vector<CMat> elements_;
  std::optional<std::vector<CVec>> kets_;
};

/// |psi> = cos(t/2)|00> + sin(t/2)|11>.
CVec psi_ket(Angle theta);
/// Projector built as the outer product of psi_ket.
QState psi_theta(Angle theta);
/// Same state assembled from its Pauli expansion.
CMat psi_theta_pauli(Angle theta);
/// sin(t/2)|01> - cos(t/2)|10>, the negative-eigenvalue partner.
CVec phi_ket(Angle theta);

/// 2 cos(t) / sqrt(1 + sin(t)^2).
double beta_of_theta(Angle theta);

enum class AncillaRealization {
  Pure,   ///< sigma = |00><00|
  Mixed,  ///< sigma = (|00><00| + |11><11|)/2
};

/**
 * Observables attaining the ideal Bell values, acting on qubit (x) ancilla
 * with a one-qubit ancilla per side and A' = B' = Z.
 */
struct IdealMeasurements {
  std::vector<Dichotomic> alice;  ///< A1..A3
  std::vector<Dichotomic> bob;    ///< B1..B6
  QState ancilla;                 ///< sigma on (A', B')
  Dichotomic a_prime;
  Dichotomic b_prime;
};

IdealMeasurements ideal_measurements(
    Angle theta, AncillaRealization realization = AncillaRealization::Pure);
QState ancilla_state(AncillaRealization realization);

struct PovmValidity {
  bool is_valid = false;
  double max_psd_violation = 0.0;   ///< max(0, -min eigenvalue)
  double completeness_residual = 0.0;  ///< ||sum_a E_a - I||_1 / 2
};
PovmValidity povm_validity(const Povm& p, double tolerance = 1e-10);

struct PovmExtremality {
  bool all_rank_one = false;
  bool linearly_independent = false;
  bool is_extremal_candidate = false;
  double independence_margin = 0.0;  ///< smallest singular value of elements
};
PovmExtremality povm_extremality(const Povm& p);

/// (w/2)(I + n.sigma) as a ket sqrt(w)|n>, phase-normalised.
CVec bloch_ket(double weight, double nx, double ny, double nz);

Povm adjusted_tetrahedral(
    Angle theta,
    std::array<double, 3> deltas = {0.0, 2.0 * std::numbers::pi / 3.0,
                                    4.0 * std::numbers::pi / 3.0});

struct TetrahedralParams {
  double lambda1, lambda_rest, cos_gamma;
};
TetrahedralParams adjusted_tetrahedral_params(Angle theta);

Povm modified_mercedes(Angle theta);

struct MercedesParams {
  double lambda1, lambda23, mu;
};
MercedesParams modified_mercedes_params(Angle theta);

/// Four weight-1/4 elements hugging the +-Y axis; throws unless 0 < eps < 1.
Povm near_y_tetrahedral(double epsilon);

/// Entrywise complex conjugate of every element (and ket).
Povm conjugate_povm(const Povm& p);

/// Outcome distribution Tr[E_a rho].
std::vector<double> outcome_probabilities(const Povm& p, const CMat& rho);

/// Rank-one kets recovered from the elements (throws if an element is not
/// rank one within 1e-9).
std::vector<CVec> kets_of(const Povm& p);

}  // namespace randcert
