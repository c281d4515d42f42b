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
 * Reconstruction of qubit POVMs from their correlations with Pauli
 * observables on psi_theta, the off-diagonal operators |a><a*| and the
 * dilation of a POVM onto qubit (x) ancilla qubit.
 *
 * Pauli index order everywhere in this header is (I, X, Y, Z).
 */

#include <array>
#include <cstddef>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "randcert/qobjects.hpp"

namespace randcert {

/// eta(mu, nu) = <sigma_mu (x) sigma_nu> on psi_theta.
struct EtaMatrix {
  Angle theta;
  Eigen::Matrix4d entries;
  double det() const { return entries.determinant(); }
};

EtaMatrix eta_matrix(Angle theta);
/// Same matrix computed from traces against psi_theta.
EtaMatrix eta_matrix_direct(Angle theta);
/// Explicit inverse from the {I,Z} 2x2 block and the X, Y diagonal entries.
Eigen::Matrix4d eta_inverse(Angle theta);
/// Ratio of the largest to smallest singular value of eta.
double eta_condition_number(Angle theta);

/// Reconstruction refuses eta with a condition number above this.
inline constexpr double kMaxEtaCondition = 1e12;

/// Operators sigma^nu = sum_mu (eta^-1)(nu, mu) sigma_mu, so that
/// alpha = sum_nu <alpha (x) sigma_nu> sigma^nu.
std::array<CMat, 4> dual_operators(Angle theta);

/// One row of four expectation values per outcome.
struct CorrelationRow {
  std::vector<std::array<double, 4>> rows;
  std::size_t size() const { return rows.size(); }
};

/// <alpha_a (x) sigma_nu> on psi_theta for a qubit POVM.
CorrelationRow correlations_from_povm(const Povm& p, Angle theta);

/**
 * <R_a (x) B_nu> for a POVM on Alice's (qubit, ancilla) with Bob's settings
 * B_nu = (I (x) I, X (x) I, Y (x) B', Z (x) I), on psi_theta (x) sigma.
 */
CorrelationRow correlations_from_dilated(const Povm& r, Angle theta,
                                         const QState& sigma,
                                         const CMat& b_prime);

/// Throws ConditioningError when eta is too ill-conditioned.
Povm reconstruct_povm(const CorrelationRow& c, Angle theta);

/// Off-diagonal operators |a><a*| = k k^T and the null space of their span.
struct OffdiagSet {
  std::vector<CMat> operators;
  std::vector<CVec> null_basis;
};

/// Throws ContractError when an element is not rank one.
OffdiagSet offdiag_set(const Povm& p);

/// |+><+| - |-><-| = X on the dilation ancilla.
CMat dilation_ancilla_observable();

/**
 * R_a = a (x) |+><+| + a* (x) |-><-| + c_a |a><a*| (x) |+><-| + h.c.
 * on (qubit, ancilla). Throws ConstraintError when some |c_a| > 1 or when
 * sum_a c_a |a><a*| is not zero within 1e-9.
 */
Povm build_dilated_povm(const Povm& p, const CVec& coeffs);
/// Same construction without the constraint checks.
Povm dilate_unchecked(const Povm& p, const CVec& coeffs);

/// CSV with header "a,E_I,E_X,E_Y,E_Z" and 0-based outcome index.
std::string correlations_to_csv(const CorrelationRow& c);
CorrelationRow correlations_from_csv(const std::string& text);

/**
 * Random rank-one qubit POVM with linearly independent elements.
 *   n = 4: Haar-random directions, weights solved from sum = I, rejected
 *          until all weights exceed 1e-6.
 *   n = 3: random directions in a random plane through the origin, same
 *          weight solve.
 *   n = 2: a random antipodal projective pair.
 */
Povm random_extremal_qubit_povm(std::size_t n, std::mt19937_64& rng);

}  // namespace randcert
