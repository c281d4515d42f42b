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
#include "randcert/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "randcert/belltest.hpp"
#include "randcert/tomography.hpp"

namespace randcert {

namespace {

constexpr double kUnit = 1e-9;  // |x| >= 1 - kUnit counts as unit magnitude

CVec pm_ket(double sign) {
  CVec v(2);
  v << 1.0 / std::sqrt(2.0), sign / std::sqrt(2.0);
  return v;
}

double max_entry(const JointTable& t) { return t.maxCoeff(); }

}  // namespace

std::pair<QState, QState> chi_states() {
  const CVec pp = kron_ket(pm_ket(1), pm_ket(1));
  const CVec mm = kron_ket(pm_ket(-1), pm_ket(-1));
  const SubsystemShape shape({2, 2}, {"A'", "B'"});
  return {QState::pure((pp + mm) / std::sqrt(2.0), shape),
          QState::pure((pp - mm) / std::sqrt(2.0), shape)};
}

Eigen::MatrixXcd joint_amplitudes(const Povm& alice, const Povm& bob,
                                  Angle theta) {
  if (alice.dim() != 2 || bob.dim() != 2)
    throw DimensionError("joint_amplitudes: expected qubit POVMs");
  const auto ka = kets_of(alice), kb = kets_of(bob);
  const CVec psi = psi_ket(theta);
  Eigen::MatrixXcd amp(static_cast<Eigen::Index>(ka.size()),
                       static_cast<Eigen::Index>(kb.size()));
  for (std::size_t a = 0; a < ka.size(); ++a)
    for (std::size_t b = 0; b < kb.size(); ++b)
      amp(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          kron_ket(ka[a], kb[b]).dot(psi);
  return amp;
}

JointTable ideal_joint(const Povm& alice, const Povm& bob, Angle theta) {
  return joint_amplitudes(alice, bob, theta).cwiseAbs2();
}

JointTable closed_form_joint(const Povm& alice, const Povm& bob,
                             const CVec& lambda, const CVec& mu, Angle theta,
                             Branch branch) {
  if (static_cast<std::size_t>(lambda.size()) != alice.size() ||
      static_cast<std::size_t>(mu.size()) != bob.size())
    throw DimensionError("closed_form_joint: one coefficient per outcome");
  const Eigen::MatrixXcd amp = joint_amplitudes(alice, bob, theta);
  const double sign = branch == Branch::Plus ? 1.0 : -1.0;
  JointTable t(amp.rows(), amp.cols());
  for (Eigen::Index a = 0; a < amp.rows(); ++a)
    for (Eigen::Index b = 0; b < amp.cols(); ++b) {
      const Complex x = amp(a, b);
      t(a, b) = std::norm(x) +
                sign * (std::conj(lambda(a)) * std::conj(mu(b)) * x * x).real();
    }
  return t;
}

AttackModel make_attack(const Povm& alice, const Povm& bob, const CVec& lambda,
                        const CVec& mu, Angle theta,
                        std::pair<std::size_t, std::size_t> target) {
  Povm R = build_dilated_povm(alice, lambda);
  Povm S = build_dilated_povm(bob, mu);
  for (const Povm* p : {&R, &S}) {
    const PovmValidity v = povm_validity(*p);
    if (!v.is_valid) {
      std::ostringstream os;
      os << "make_attack: dilated POVM invalid (psd violation "
         << v.max_psd_violation << ", completeness "
         << v.completeness_residual << ")";
      throw ConstraintError(os.str(), std::max(v.max_psd_violation,
                                               v.completeness_residual));
    }
  }
  auto [cp, cm] = chi_states();
  return AttackModel{theta,      lambda,        mu,
                     alice,      bob,           std::move(R),
                     std::move(S), std::move(cp), std::move(cm),
                     {0.5, 0.5}, target};
}

CVec choose_null_vector(const std::vector<CVec>& basis, std::uint64_t seed) {
  if (basis.empty()) throw AttackDegenerate("no nonzero null vector");
  std::vector<CVec> candidates = basis;
  if (basis.size() > 1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (int k = 0; k < 16; ++k) {
      CVec v = CVec::Zero(basis[0].size());
      for (const auto& b : basis) v += Complex(g(rng), g(rng)) * b;
      candidates.push_back(v);
    }
  }
  CVec best;
  int best_score = -1;
  for (const auto& c : candidates) {
    const double m = c.cwiseAbs().maxCoeff();
    if (m < 1e-12) continue;
    const CVec v = c / m;
    int score = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (std::abs(v(i)) >= 1.0 - kUnit) ++score;
    if (score > best_score) {
      best_score = score;
      best = v;
    }
  }
  if (best_score < 0) throw AttackDegenerate("null basis is numerically zero");
  return best;
}

AttackModel build_attack(const Povm& alice, const Povm& bob, Angle theta,
                         std::uint64_t seed) {
  const OffdiagSet oa = offdiag_set(alice);
  const OffdiagSet ob = offdiag_set(bob);
  if (oa.null_basis.empty() || ob.null_basis.empty())
    throw AttackDegenerate(
        "build_attack: off-diagonal operators are linearly independent on at "
        "least one side");
  CVec lambda = choose_null_vector(oa.null_basis, seed);
  const CVec mu = choose_null_vector(ob.null_basis, seed + 1);

  const Eigen::MatrixXcd amp = joint_amplitudes(alice, bob, theta);
  double best = 0.0;
  std::pair<std::size_t, std::size_t> target{0, 0};
  bool found = false;
  for (Eigen::Index a = 0; a < lambda.size(); ++a) {
    if (std::abs(lambda(a)) < 1.0 - kUnit) continue;
    for (Eigen::Index b = 0; b < mu.size(); ++b) {
      if (std::abs(mu(b)) < 1.0 - kUnit) continue;
      const double w = std::norm(amp(a, b));
      if (w > best + 1e-15) {
        best = w;
        target = {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
        found = true;
      }
    }
  }
  if (!found || best <= 1e-12)
    throw AttackDegenerate(
        "build_attack: no unit-coefficient outcome pair with nonzero "
        "probability");

  const auto a = static_cast<Eigen::Index>(target.first);
  const auto b = static_cast<Eigen::Index>(target.second);
  const Complex x = amp(a, b);
  const double phi = std::arg(std::conj(lambda(a)) * std::conj(mu(b)) * x * x);
  lambda *= std::polar(1.0, phi);
  return make_attack(alice, bob, lambda, mu, theta, target);
}

JointTable brute_force_joint(const Povm& R, const Povm& S, Angle theta,
                             const QState& ancilla) {
  if (R.dim() != 4 || S.dim() != 4 || ancilla.dim() != 4)
    throw DimensionError(
        "brute_force_joint: expected POVMs on qubit (x) ancilla and a "
        "two-qubit ancilla state");
  const QState rho = joint_state(psi_theta(theta), ancilla);
  JointTable t(static_cast<Eigen::Index>(R.size()),
               static_cast<Eigen::Index>(S.size()));
  for (std::size_t a = 0; a < R.size(); ++a)
    for (std::size_t b = 0; b < S.size(); ++b)
      t(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          trace_product_real(kron(R[a], S[b]), rho.rho());
  return t;
}

JointTable brute_force_joint(const AttackModel& attack, Branch branch) {
  return brute_force_joint(
      attack.R, attack.S, attack.theta,
      branch == Branch::Plus ? attack.chi_plus : attack.chi_minus);
}

ConditionalJoint conditional_joint(const AttackModel& attack) {
  ConditionalJoint cj;
  cj.plus = closed_form_joint(attack.alice_ref, attack.bob_ref, attack.lambda,
                              attack.mu, attack.theta, Branch::Plus);
  cj.minus = closed_form_joint(attack.alice_ref, attack.bob_ref, attack.lambda,
                               attack.mu, attack.theta, Branch::Minus);
  cj.average = attack.eve_prior[0] * cj.plus + attack.eve_prior[1] * cj.minus;
  cj.guessing_prob = guessing_probability(cj);
  cj.certified_bits = -std::log2(cj.guessing_prob);
  return cj;
}

double guessing_probability(const JointTable& plus, const JointTable& minus) {
  return 0.5 * (max_entry(plus) + max_entry(minus));
}

double guessing_probability(const ConditionalJoint& cj) {
  return guessing_probability(cj.plus, cj.minus);
}

double randomness_cap() {
  // One of sixteen outcomes zeroed: the rest share 1, so some entry is at
  // least 1/15. The other branch can be uniform.
  return -std::log2(0.5 * (1.0 / 15.0 + 1.0 / 16.0));
}

double min_entropy(std::span<const double> dist) {
  if (dist.empty()) throw ContractError("min_entropy: empty distribution");
  double sum = 0.0, mx = 0.0;
  for (double p : dist) {
    if (p < -1e-12)
      throw ContractError("min_entropy: negative probability");
    sum += p;
    mx = std::max(mx, p);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "min_entropy: distribution sums to " << sum << ", not 1";
    throw ContractError(os.str());
  }
  return -std::log2(mx);
}

double min_entropy(const JointTable& table) {
  return min_entropy(std::span<const double>(table.data(),
                                             static_cast<std::size_t>(table.size())));
}

EveEnsemble chi_ensemble() {
  auto [cp, cm] = chi_states();
  return EveEnsemble{{0.5, 0.5}, {std::move(cp), std::move(cm)}};
}

namespace {

Eigen::MatrixXcd haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

std::vector<EveEnsemble> sample_eve_ensembles(std::size_t n,
                                              std::mt19937_64& rng) {
  const CVec pp = kron_ket(pm_ket(1), pm_ket(1));
  const CVec mm = kron_ket(pm_ket(-1), pm_ket(-1));
  const SubsystemShape shape({2, 2}, {"A'", "B'"});
  std::vector<EveEnsemble> out;
  for (std::size_t k = 0; k < n; ++k) {
    // Random 2x2 density matrix omega = G G^dagger / Tr, diagonalised.
    std::normal_distribution<double> g;
    Eigen::Matrix2cd gm;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) gm(i, j) = Complex(g(rng), g(rng));
    Eigen::Matrix2cd omega = gm * gm.adjoint();
    omega /= omega.trace().real();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(omega);

    // Purification sum_i sqrt(p_i) |v_i> (x) U|i> with a 3-level environment.
    const Eigen::MatrixXcd U = haar_unitary(3, rng);
    std::vector<CVec> branches;  // unnormalised ancilla vectors per env basis
    for (int e = 0; e < 3; ++e) branches.push_back(CVec::Zero(4));
    for (int i = 0; i < 2; ++i) {
      const double p = std::max(es.eigenvalues()(i), 0.0);
      const CVec v = es.eigenvectors()(0, i) * pp + es.eigenvectors()(1, i) * mm;
      for (int e = 0; e < 3; ++e) branches[e] += std::sqrt(p) * U(e, i) * v;
    }
    std::vector<std::vector<int>> groups;
    if (k % 2 == 0)
      groups = {{0}, {1}, {2}};
    else
      groups = {{0, 1}, {2}};

    EveEnsemble ens;
    for (const auto& grp : groups) {
      CMat rho = CMat::Zero(4, 4);
      for (int e : grp) rho += projector(branches[e]);
      const double p = rho.trace().real();
      if (p < 1e-12) continue;
      ens.probs.push_back(p);
      ens.states.emplace_back(CMat(rho / p), shape);
    }
    out.push_back(std::move(ens));
  }
  return out;
}

double conditional_vs_ideal(const Povm& R, const Povm& S, Angle theta,
                            const EveEnsemble& ensemble,
                            const JointTable& ideal) {
  double worst = 0.0;
  for (const auto& st : ensemble.states) {
    const JointTable t = brute_force_joint(R, S, theta, st);
    worst = std::max(worst, (t - ideal).cwiseAbs().maxCoeff());
  }
  return worst;
}

ReductionReport reduction_check(const Povm& alice, const CVec& lambda,
                                const Povm& bob, const CVec& mu, Angle theta,
                                const std::vector<EveEnsemble>& ensembles) {
  const Povm R = build_dilated_povm(alice, lambda);
  const Povm S = build_dilated_povm(bob, mu);
  const JointTable ideal = ideal_joint(alice, bob, theta);
  ReductionReport r;
  for (const auto& ens : ensembles) {
    const double d = conditional_vs_ideal(R, S, theta, ens, ideal);
    r.deviations.push_back(d);
    r.max_deviation = std::max(r.max_deviation, d);
  }
  r.reduces = r.max_deviation <= 1e-10;
  return r;
}

ReductionReport qubit_reduction_check(const Povm& alice, const CVec& lambda,
                                      const Povm& bob, Angle theta,
                                      const std::vector<EveEnsemble>& ensembles) {
  if (bob.size() > 3)
    throw ContractError(
        "qubit_reduction_check: Bob's POVM must have at most three outcomes");
  return reduction_check(alice, lambda, bob,
                         CVec::Zero(static_cast<Eigen::Index>(bob.size())),
                         theta, ensembles);
}

}  // namespace randcert
