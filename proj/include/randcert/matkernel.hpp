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
 * Dense complex matrix kernel.
 *
 * Storage is row-major Eigen. Every operator in the library is a CMat; the
 * subsystem layout of a composite operator is carried alongside it as a
 * SubsystemShape. Composite spaces are always ordered
 * (A, A', B, B') = (Alice qubit, Alice ancilla, Bob qubit, Bob ancilla)
 * with kron nesting ((A (x) A') (x) (B (x) B')). Any other ordering goes
 * through permute_subsystems().
 */

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "randcert/errors.hpp"

namespace randcert {

using Complex = std::complex<double>;
using CMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

namespace tol {
/// Max |M - M^dagger| for a matrix treated as Hermitian.
inline constexpr double herm = 1e-12;
/// Max |M - V diag(l) V^dagger| after an eigendecomposition.
inline constexpr double reconstruction = 1e-10;
/// Singular values at or below this are treated as zero in null_space().
inline constexpr double null_space = 1e-9;
}  // namespace tol

/** Ordered subsystem dimensions of a composite space, with optional names. */
struct SubsystemShape {
  std::vector<std::size_t> dims;
  std::vector<std::string> names;

  SubsystemShape() = default;
  SubsystemShape(std::vector<std::size_t> d, std::vector<std::string> n = {});

  std::size_t total() const;
  std::size_t size() const { return dims.size(); }
  bool operator==(const SubsystemShape&) const = default;
};

CMat identity(std::size_t n);
CMat ket_bra(const CVec& ket, const CVec& bra);
CMat projector(const CVec& ket);

/** (a (x) b)[i*rb + k, j*cb + l] = a[i,j] * b[k,l]. */
CMat kron(const CMat& a, const CMat& b);
CMat kron(std::initializer_list<CMat> factors);
CVec kron_ket(const CVec& a, const CVec& b);

double max_abs(const CMat& m);
double hermiticity_defect(const CMat& m);
bool is_hermitian(const CMat& m, double tolerance = tol::herm);

/// Real part of Tr[a b].
double trace_product_real(const CMat& a, const CMat& b);

/**
 * Reduced operator on the subsystems listed in `keep` (ascending order is
 * not required; output follows the original subsystem order). An empty keep
 * set returns the 1x1 trace.
 */
CMat partial_trace(const CMat& m, const SubsystemShape& shape,
                   std::span<const std::size_t> keep);
CMat partial_trace(const CMat& m, const SubsystemShape& shape,
                   std::initializer_list<std::size_t> keep);

/**
 * Reorders tensor factors. Output subsystem k is input subsystem order[k].
 * This is the single routine used for all subsystem reorderings.
 */
CMat permute_subsystems(const CMat& m, const SubsystemShape& shape,
                        std::span<const std::size_t> order);
CMat permute_subsystems(const CMat& m, const SubsystemShape& shape,
                        std::initializer_list<std::size_t> order);
SubsystemShape permute_shape(const SubsystemShape& shape,
                             std::span<const std::size_t> order);

struct Eigh {
  RVec values;   ///< descending
  CMat vectors;  ///< column k pairs with values[k]
};

/// Hermitian eigendecomposition. Throws ContractError on non-Hermitian input.
Eigh eigh(const CMat& m);

RVec singular_values(const CMat& m);
double trace_norm(const CMat& m);

/**
 * Orthonormal basis of { c : sum_a c_a M_a = 0 }. Each matrix is flattened
 * into a column; right singular vectors with singular value <= tolerance
 * span the null space.
 */
std::vector<CVec> null_space(std::span<const CMat> matrices,
                             double tolerance = tol::null_space);

/// Smallest singular value of the flattened stack (0 when columns > rows).
double independence_margin(std::span<const CMat> matrices);

/// Multiplies by a phase so that the first entry with |v_i| > cutoff is
/// real and positive.
CVec fix_global_phase(const CVec& v, double cutoff = 1e-12);

}  // namespace randcert
