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
 * Bell expressions for the three-setting / six-setting test, the qubit Bell
 * operator and its spectral self-test, and the projective two-bit scheme.
 *
 *   I = < beta A1 + A1 (B1 + B2) + A2 (B1 - B2) >
 *   J = < beta A1 + A1 (B3 + B4) + A3 (B3 - B4) >
 *   S = < A2 (B5 + B6) + A3 (B5 - B6) >
 */

#include <array>
#include <vector>

#include "randcert/qobjects.hpp"

namespace randcert {

/**
 * A state on (A, A', B, B') and Alice's / Bob's observables, each acting on
 * its own (qubit (x) ancilla) factor.
 */
struct BellScenario {
  QState state;
  std::vector<Dichotomic> alice;
  std::vector<Dichotomic> bob;
  Angle theta;
};

/// psi_theta (x) sigma on (A, A', B, B') with the ideal observables.
BellScenario ideal_scenario(
    Angle theta, AncillaRealization realization = AncillaRealization::Pure);

/// Lays psi_AB (x) sigma_A'B' out as (A, A', B, B').
QState joint_state(const QState& psi_ab, const QState& sigma);

/// Ideal values 2 sqrt2 sqrt(1 + beta^2/4) and 2 sqrt2 sin(theta).
double ideal_I(Angle theta);
double ideal_S(Angle theta);

struct BellValues {
  double I = 0, J = 0, S = 0;
  double ideal_I = 0, ideal_J = 0, ideal_S = 0;
  std::array<double, 3> residuals{};  ///< |I - ideal_I|, |J - ...|, |S - ...|
  double beta = 0;
};

/// <A_x (x) B_y> on the scenario state.
double correlator(const BellScenario& s, const CMat& a, const CMat& b);

/// Throws ContractError for too few observables and DimensionError when the
/// observables do not fit the state.
BellValues eval_bell(const BellScenario& s);

/// beta Z.I + sqrt2 sqrt(1 + beta^2/4) Z.Z + sqrt2 sqrt(1 - beta^2/4) X.X.
/// Throws DomainError unless 0 <= beta < 2.
CMat bell_operator_I(double beta);

/// Inverts beta(theta) by bisection on (0, pi/2]; tolerance 1e-12.
Angle theta_of_beta(double beta);

struct SpectralReport {
  double beta = 0;
  Angle theta = Angle::right();
  RVec eigenvalues;             ///< descending
  RVec expected;                ///< {+m, 0, 0, -m}
  double eigenvalue_residual = 0;
  double fidelity = 0;          ///< |<psi_theta|v_top>|^2
  double spectral_form_residual = 0;
  double cos_half_mu_closed = 0;   ///< sqrt((1 + beta^2/4)/2)
  double cos_half_mu_numeric = 0;  ///< from maximising the top eigenvalue
};

SpectralReport spectral_selftest(double beta);

struct B7Report {
  double correlation = 0;          ///< <A2 B7> via the full state
  double correlation_formula = 0;  ///< sin(theta) Tr[B7 (X/2 (x) sigma_B')]
  bool saturates = false;
  bool is_X_tensor_I = false;
  bool precondition_ok = false;   ///< sigma_B' full rank
  double sigma_min_eigenvalue = 0;
};

/// sigma_Bprime is the single-qubit reduced ancilla state on Bob's side. A
/// rank-deficient sigma is reported through precondition_ok, not thrown.
B7Report verify_b7_extraction(Angle theta, const Dichotomic& candidate_b7,
                              const QState& sigma_bprime);

/// P(ab|37) for a, b in {+1, -1}, ordered (++, +-, -+, --).
std::array<double, 4> projective_joint_distribution(
    Angle theta, AncillaRealization realization = AncillaRealization::Pure);

}  // namespace randcert
