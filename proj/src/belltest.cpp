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
#include "randcert/belltest.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace randcert {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double top_eigenvalue_for_angle(double beta, double mu) {
  using namespace pauli;
  // A1 = Z, A2 = X; B1,2 = cos(mu/2) Z +- sin(mu/2) X.
  const double c = std::cos(mu / 2), s = std::sin(mu / 2);
  const CMat b1 = c * Z() + s * X();
  const CMat b2 = c * Z() - s * X();
  const CMat op = beta * kron(Z(), I()) + kron(Z(), b1 + b2) +
                  kron(X(), b1 - b2);
  return eigh(op).values(0);
}

}  // namespace

QState joint_state(const QState& psi_ab, const QState& sigma) {
  if (psi_ab.shape().dims.size() != 2 || sigma.shape().dims.size() != 2)
    throw DimensionError("joint_state: expected two-party states");
  const SubsystemShape prod(
      {psi_ab.shape().dims[0], psi_ab.shape().dims[1], sigma.shape().dims[0],
       sigma.shape().dims[1]},
      {"A", "B", "A'", "B'"});
  const std::array<std::size_t, 4> order{0, 2, 1, 3};
  CMat rho = permute_subsystems(kron(psi_ab.rho(), sigma.rho()), prod, order);
  return QState(std::move(rho), permute_shape(prod, order));
}

BellScenario ideal_scenario(Angle theta, AncillaRealization realization) {
  IdealMeasurements m = ideal_measurements(theta, realization);
  return BellScenario{joint_state(psi_theta(theta), m.ancilla),
                      std::move(m.alice), std::move(m.bob), theta};
}

double ideal_I(Angle theta) {
  const double b = beta_of_theta(theta);
  return 2.0 * kSqrt2 * std::sqrt(1.0 + b * b / 4.0);
}

double ideal_S(Angle theta) { return 2.0 * kSqrt2 * theta.sin(); }

double correlator(const BellScenario& s, const CMat& a, const CMat& b) {
  const std::size_t n = s.state.dim();
  if (static_cast<std::size_t>(a.rows() * b.rows()) != n ||
      a.rows() != a.cols() || b.rows() != b.cols()) {
    std::ostringstream os;
    os << "correlator: observables " << a.rows() << "x" << a.cols() << " and "
       << b.rows() << "x" << b.cols() << " do not fit a state of dimension "
       << n;
    throw DimensionError(os.str());
  }
  return trace_product_real(kron(a, b), s.state.rho());
}

BellValues eval_bell(const BellScenario& s) {
  if (s.alice.size() < 3 || s.bob.size() < 6)
    throw ContractError("eval_bell: need 3 observables for Alice and 6 for Bob");
  const auto& A = s.alice;
  const auto& B = s.bob;
  const std::size_t bdim = static_cast<std::size_t>(B[0].op().rows());
  const CMat idB = identity(bdim);
  auto E = [&](const CMat& a, const CMat& b) { return correlator(s, a, b); };

  BellValues v;
  v.beta = beta_of_theta(s.theta);
  const double a1 = E(A[0].op(), idB);
  v.I = v.beta * a1 + E(A[0].op(), B[0].op() + B[1].op()) +
        E(A[1].op(), B[0].op() - B[1].op());
  v.J = v.beta * a1 + E(A[0].op(), B[2].op() + B[3].op()) +
        E(A[2].op(), B[2].op() - B[3].op());
  v.S = E(A[1].op(), B[4].op() + B[5].op()) +
        E(A[2].op(), B[4].op() - B[5].op());
  v.ideal_I = v.ideal_J = ideal_I(s.theta);
  v.ideal_S = ideal_S(s.theta);
  v.residuals = {std::abs(v.I - v.ideal_I), std::abs(v.J - v.ideal_J),
                 std::abs(v.S - v.ideal_S)};
  return v;
}

CMat bell_operator_I(double beta) {
  if (!(beta >= 0.0) || !(beta < 2.0)) {
    std::ostringstream os;
    os << "bell_operator_I: beta must lie in [0, 2), got " << beta;
    throw DomainError(os.str());
  }
  using namespace pauli;
  const double q = beta * beta / 4.0;
  return beta * kron(Z(), I()) + kSqrt2 * std::sqrt(1.0 + q) * kron(Z(), Z()) +
         kSqrt2 * std::sqrt(1.0 - q) * kron(X(), X());
}

Angle theta_of_beta(double beta) {
  if (!(beta >= 0.0) || !(beta < 2.0)) {
    std::ostringstream os;
    os << "theta_of_beta: beta must lie in [0, 2), got " << beta;
    throw DomainError(os.str());
  }
  // beta(theta) decreases from 2 to 0 on (0, pi/2].
  double lo = 0.0, hi = std::numbers::pi / 2;
  auto f = [](double t) {
    const double s = std::sin(t);
    return 2.0 * std::cos(t) / std::sqrt(1.0 + s * s);
  };
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > beta)
      lo = mid;
    else
      hi = mid;
  }
  return Angle(hi);
}

SpectralReport spectral_selftest(double beta) {
  SpectralReport r;
  const CMat op = bell_operator_I(beta);
  r.beta = beta;
  r.theta = theta_of_beta(beta);
  const Eigh d = eigh(op);
  r.eigenvalues = d.values;
  const double m = 2.0 * kSqrt2 * std::sqrt(1.0 + beta * beta / 4.0);
  r.expected = RVec(4);
  r.expected << m, 0.0, 0.0, -m;
  r.eigenvalue_residual = (r.eigenvalues - r.expected).cwiseAbs().maxCoeff();
  const CVec psi = psi_ket(r.theta);
  r.fidelity = std::norm(psi.dot(d.vectors.col(0)));
  const CMat form = m * (projector(psi) - projector(phi_ket(r.theta)));
  r.spectral_form_residual = max_abs(op - form);

  r.cos_half_mu_closed = std::sqrt((1.0 + beta * beta / 4.0) / 2.0);
  // Golden-section search of the top eigenvalue over mu in (0, pi).
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = std::numbers::pi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = top_eigenvalue_for_angle(beta, x1);
  double f2 = top_eigenvalue_for_angle(beta, x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = top_eigenvalue_for_angle(beta, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = top_eigenvalue_for_angle(beta, x1);
    }
  }
  r.cos_half_mu_numeric = std::cos(0.25 * (a + b));
  return r;
}

B7Report verify_b7_extraction(Angle theta, const Dichotomic& candidate_b7,
                              const QState& sigma_bprime) {
  if (sigma_bprime.dim() != 2 || candidate_b7.op().rows() != 4)
    throw DimensionError(
        "verify_b7_extraction: expected a qubit ancilla and a 4x4 B7");
  B7Report r;
  r.sigma_min_eigenvalue = eigh(sigma_bprime.rho()).values.minCoeff();
  r.precondition_ok = r.sigma_min_eigenvalue > 1e-10;

  // Full-state route: A2 = X (x) I on (A, A'), Alice's ancilla traced out
  // trivially, so it is enough to work on (A, B, B').
  const CMat rho = kron(psi_theta(theta).rho(), sigma_bprime.rho());
  const CMat a2 = kron(pauli::X(), identity(4));
  const CMat b7 = kron(identity(2), candidate_b7.op());
  r.correlation = trace_product_real(a2 * b7, rho);
  r.correlation_formula =
      theta.sin() *
      trace_product_real(candidate_b7.op(),
                         kron(0.5 * pauli::X(), sigma_bprime.rho()));
  r.saturates = std::abs(r.correlation - theta.sin()) <= 1e-10;
  r.is_X_tensor_I =
      max_abs(candidate_b7.op() - kron(pauli::X(), identity(2))) <= 1e-10;
  return r;
}

std::array<double, 4> projective_joint_distribution(
    Angle theta, AncillaRealization realization) {
  const IdealMeasurements m = ideal_measurements(theta, realization);
  BellScenario s{joint_state(psi_theta(theta), m.ancilla), m.alice, m.bob,
                 theta};
  const CMat id4 = identity(4);
  const CMat& a3 = m.alice[2].op();
  const CMat b7 = kron(pauli::X(), identity(2));
  std::array<double, 4> p{};
  std::size_t k = 0;
  for (int a : {1, -1})
    for (int b : {1, -1})
      p[k++] = 0.25 * correlator(s, id4 + a * a3, id4 + b * b7);
  return p;
}

}  // namespace randcert
