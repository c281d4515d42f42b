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
 * The conjugation attack on a pair of four-outcome POVMs: Eve prepares the
 * ancillas in chi+ or chi- with equal probability, each side measures a
 * dilated POVM, and the averaged statistics match the honest qubit ones.
 */

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "randcert/qobjects.hpp"

namespace randcert {

/// Rows index Alice's outcome, columns Bob's.
using JointTable = Eigen::MatrixXd;

enum class Branch { Plus, Minus };

/// (|++> + |-->)/sqrt2 and (|++> - |-->)/sqrt2 on (A', B').
std::pair<QState, QState> chi_states();

/// |<alpha_a beta_b|psi_theta>|^2.
JointTable ideal_joint(const Povm& alice, const Povm& bob, Angle theta);

/// <alpha_a beta_b|psi_theta> with subnormalised kets.
Eigen::MatrixXcd joint_amplitudes(const Povm& alice, const Povm& bob,
                                  Angle theta);

/// |amp|^2 +- Re[conj(lambda_a) conj(mu_b) amp^2].
JointTable closed_form_joint(const Povm& alice, const Povm& bob,
                             const CVec& lambda, const CVec& mu, Angle theta,
                             Branch branch);

struct AttackModel {
  Angle theta;
  CVec lambda;
  CVec mu;
  Povm alice_ref;
  Povm bob_ref;
  Povm R;  ///< on (A, A')
  Povm S;  ///< on (B, B')
  QState chi_plus;
  QState chi_minus;
  std::array<double, 2> eve_prior{0.5, 0.5};
  std::pair<std::size_t, std::size_t> target_pair{0, 0};
};

/// Validates the coefficient constraints and both dilated POVMs.
AttackModel make_attack(const Povm& alice, const Povm& bob, const CVec& lambda,
                        const CVec& mu, Angle theta,
                        std::pair<std::size_t, std::size_t> target = {0, 0});

/**
 * Picks a null vector on each side with as many unit-magnitude entries as
 * possible (first candidate wins ties; candidates are the null basis and
 * then seeded random combinations), selects the outcome pair with the
 * largest honest probability among unit-coefficient pairs and rotates the
 * phase of Alice's coefficients so that that pair never occurs under chi-.
 * Throws AttackDegenerate when no such pair exists.
 */
AttackModel build_attack(const Povm& alice, const Povm& bob, Angle theta,
                         std::uint64_t seed = 0);

/// Null vector from a basis, scaled to max magnitude one.
CVec choose_null_vector(const std::vector<CVec>& basis, std::uint64_t seed);

/// Tr[(R_a (x) S_b)(psi_theta (x) ancilla)] with ancilla on (A', B').
JointTable brute_force_joint(const Povm& R, const Povm& S, Angle theta,
                             const QState& ancilla);
JointTable brute_force_joint(const AttackModel& attack, Branch branch);

struct ConditionalJoint {
  JointTable plus;
  JointTable minus;
  JointTable average;
  double guessing_prob = 0;
  double certified_bits = 0;
};

ConditionalJoint conditional_joint(const AttackModel& attack);

/// (max P+ + max P-)/2.
double guessing_probability(const ConditionalJoint& cj);
double guessing_probability(const JointTable& plus, const JointTable& minus);

/// -log2((1/15 + 1/16)/2).
double randomness_cap();

/// -log2 of the largest entry. Throws ContractError unless the entries are
/// nonnegative (within 1e-12) and sum to 1 within 1e-9.
double min_entropy(std::span<const double> dist);
double min_entropy(const JointTable& table);

/// A decomposition of Eve's ancilla state into conditional states.
struct EveEnsemble {
  std::vector<double> probs;
  std::vector<QState> states;
};

/// The equiprobable {chi+, chi-} ensemble.
EveEnsemble chi_ensemble();

/**
 * Random ancilla states supported on span{|++>, |-->} (so <A' (x) B'> = 1),
 * purified into a three-level environment with a Haar-random frame. Even
 * samples measure the environment with three rank-one projectors, odd
 * samples with a rank-two / rank-one split.
 */
std::vector<EveEnsemble> sample_eve_ensembles(std::size_t n,
                                              std::mt19937_64& rng);

/// max_ab |P(ab | member) - ideal(ab)| over all members of the ensemble.
double conditional_vs_ideal(const Povm& R, const Povm& S, Angle theta,
                            const EveEnsemble& ensemble, const JointTable& ideal);

struct ReductionReport {
  std::vector<double> deviations;  ///< one per ensemble
  double max_deviation = 0;
  bool reduces = false;  ///< max_deviation <= 1e-10
};

/**
 * Dilates Alice's POVM with the given coefficients and Bob's with the given
 * coefficients, and compares every conditional joint with the qubit joint.
 */
ReductionReport reduction_check(const Povm& alice, const CVec& lambda,
                                const Povm& bob, const CVec& mu, Angle theta,
                                const std::vector<EveEnsemble>& ensembles);

/// Bob has at most three outcomes, so his dilation is block diagonal. Throws
/// ContractError otherwise.
ReductionReport qubit_reduction_check(const Povm& alice, const CVec& lambda,
                                      const Povm& bob, Angle theta,
                                      const std::vector<EveEnsemble>& ensembles);

}  // namespace randcert
