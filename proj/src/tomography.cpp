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
#include "randcert/tomography.hpp"

#include <cmath>
#include <sstream>

#include "randcert/numfmt.hpp"

namespace randcert {

EtaMatrix eta_matrix(Angle theta) {
  const double c = theta.cos(), s = theta.sin();
  Eigen::Matrix4d e = Eigen::Matrix4d::Zero();
  e(0, 0) = 1.0;
  e(3, 3) = 1.0;
  e(0, 3) = e(3, 0) = c;
  e(1, 1) = s;
  e(2, 2) = -s;
  return {theta, e};
}

EtaMatrix eta_matrix_direct(Angle theta) {
  const CMat psi = psi_theta(theta).rho();
  const auto p = pauli::basis();
  Eigen::Matrix4d e;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      e(mu, nu) = trace_product_real(kron(p[mu], p[nu]), psi);
  return {theta, e};
}

Eigen::Matrix4d eta_inverse(Angle theta) {
  const double c = theta.cos(), s = theta.sin();
  const double s2 = s * s;  // det of [[1, c], [c, 1]]
  Eigen::Matrix4d inv = Eigen::Matrix4d::Zero();
  inv(0, 0) = inv(3, 3) = 1.0 / s2;
  inv(0, 3) = inv(3, 0) = -c / s2;
  inv(1, 1) = 1.0 / s;
  inv(2, 2) = -1.0 / s;
  return inv;
}

double eta_condition_number(Angle theta) {
  const double c = theta.cos(), s = theta.sin();
  // Singular values: 1 + c, 1 - c (the {I,Z} block), s, s.
  return std::max(1.0 + c, s) / std::min(1.0 - c, s);
}

std::array<CMat, 4> dual_operators(Angle theta) {
  const Eigen::Matrix4d inv = eta_inverse(theta);
  const auto p = pauli::basis();
  std::array<CMat, 4> dual;
  for (int nu = 0; nu < 4; ++nu) {
    dual[nu] = CMat::Zero(2, 2);
    for (int mu = 0; mu < 4; ++mu) dual[nu] += inv(nu, mu) * p[mu];
  }
  return dual;
}

CorrelationRow correlations_from_povm(const Povm& p, Angle theta) {
  if (p.dim() != 2)
    throw DimensionError("correlations_from_povm: expected a qubit POVM");
  const CMat psi = psi_theta(theta).rho();
  const auto s = pauli::basis();
  CorrelationRow c;
  for (const auto& e : p.elements()) {
    std::array<double, 4> row{};
    for (int nu = 0; nu < 4; ++nu)
      row[nu] = trace_product_real(kron(e, s[nu]), psi);
    c.rows.push_back(row);
  }
  return c;
}

CorrelationRow correlations_from_dilated(const Povm& r, Angle theta,
                                         const QState& sigma,
                                         const CMat& b_prime) {
  if (sigma.dim() != 4 || b_prime.rows() != 2)
    throw DimensionError(
        "correlations_from_dilated: expected a two-qubit ancilla state");
  if (r.dim() != 4)
    throw DimensionError(
        "correlations_from_dilated: expected a POVM on qubit (x) ancilla");
  const SubsystemShape prod({2, 2, 2, 2});
  const std::array<std::size_t, 4> order{0, 2, 1, 3};
  const CMat rho =
      permute_subsystems(kron(psi_theta(theta).rho(), sigma.rho()), prod, order);
  const CMat id2 = identity(2);
  const std::array<CMat, 4> settings{
      kron(id2, id2), kron(pauli::X(), id2), kron(pauli::Y(), b_prime),
      kron(pauli::Z(), id2)};
  CorrelationRow c;
  for (const auto& e : r.elements()) {
    std::array<double, 4> row{};
    for (int nu = 0; nu < 4; ++nu)
      row[nu] = trace_product_real(kron(e, settings[nu]), rho);
    c.rows.push_back(row);
  }
  return c;
}

Povm reconstruct_povm(const CorrelationRow& c, Angle theta) {
  const double kappa = eta_condition_number(theta);
  if (!(kappa <= kMaxEtaCondition)) {
    std::ostringstream os;
    os << "reconstruct_povm: eta is ill-conditioned (kappa = " << kappa
       << ") at theta = " << theta.radians();
    throw ConditioningError(os.str(), kappa);
  }
  const auto dual = dual_operators(theta);
  std::vector<CMat> els;
  for (const auto& row : c.rows) {
    CMat e = CMat::Zero(2, 2);
    for (int nu = 0; nu < 4; ++nu) e += row[nu] * dual[nu];
    els.push_back(e);
  }
  return Povm::from_elements(std::move(els));
}

OffdiagSet offdiag_set(const Povm& p) {
  if (p.dim() != 2) throw DimensionError("offdiag_set: expected a qubit POVM");
  OffdiagSet out;
  for (const auto& k : kets_of(p)) out.operators.push_back(k * k.transpose());
  out.null_basis = null_space(out.operators);
  return out;
}

CMat dilation_ancilla_observable() { return pauli::X(); }

namespace {

CVec plus_ket() {
  CVec v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

CVec minus_ket() {
  CVec v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

Povm dilate_unchecked(const Povm& p, const CVec& coeffs) {
  if (static_cast<std::size_t>(coeffs.size()) != p.size())
    throw DimensionError("dilate: one coefficient per outcome required");
  const auto kets = kets_of(p);
  const CVec plus = plus_ket(), minus = minus_ket();
  const CMat pp = projector(plus), mm = projector(minus);
  const CMat pm = ket_bra(plus, minus);
  std::vector<CMat> els;
  for (std::size_t a = 0; a < p.size(); ++a) {
    const CVec& k = kets[a];
    const CMat alpha = projector(k);
    const CMat off = coeffs(static_cast<Eigen::Index>(a)) * (k * k.transpose());
    CMat r = kron(alpha, pp) + kron(alpha.conjugate(), mm) + kron(off, pm);
    r += kron(off, pm).adjoint().eval();
    els.push_back(std::move(r));
  }
  return Povm::from_elements(std::move(els));
}

Povm build_dilated_povm(const Povm& p, const CVec& coeffs) {
  if (static_cast<std::size_t>(coeffs.size()) != p.size())
    throw DimensionError(
        "build_dilated_povm: one coefficient per outcome required");
  double worst = 0.0;
  for (Eigen::Index a = 0; a < coeffs.size(); ++a)
    worst = std::max(worst, std::abs(coeffs(a)));
  if (worst > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "build_dilated_povm: coefficient magnitude " << worst
       << " exceeds 1";
    throw ConstraintError(os.str(), worst - 1.0);
  }
  const OffdiagSet off = offdiag_set(p);
  CMat sum = CMat::Zero(2, 2);
  for (std::size_t a = 0; a < p.size(); ++a)
    sum += coeffs(static_cast<Eigen::Index>(a)) * off.operators[a];
  const double residual = max_abs(sum);
  if (residual > 1e-9) {
    std::ostringstream os;
    os << "build_dilated_povm: sum of weighted off-diagonal operators is "
       << residual << ", not zero";
    throw ConstraintError(os.str(), residual);
  }
  return dilate_unchecked(p, coeffs);
}

std::string correlations_to_csv(const CorrelationRow& c) {
  std::string out = "a,E_I,E_X,E_Y,E_Z\n";
  for (std::size_t a = 0; a < c.rows.size(); ++a) {
    out += std::to_string(a);
    for (double v : c.rows[a]) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

CorrelationRow correlations_from_csv(const std::string& text) {
  CorrelationRow c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.rfind("a,", 0) == 0) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 5)
      throw ContractError("correlations_from_csv: expected 5 columns in '" +
                          line + "'");
    if (std::stoul(fields[0]) != c.rows.size())
      throw ContractError("correlations_from_csv: outcomes out of order");
    std::array<double, 4> row{};
    for (int nu = 0; nu < 4; ++nu) row[nu] = parse_double(fields[nu + 1]);
    c.rows.push_back(row);
  }
  return c;
}

namespace {

Eigen::Vector3d random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3d v;
  do {
    v = {g(rng), g(rng), g(rng)};
  } while (v.norm() < 1e-8);
  return v.normalized();
}

Povm from_directions(const std::vector<Eigen::Vector3d>& dirs,
                     const Eigen::VectorXd& w) {
  std::vector<CVec> kets;
  for (std::size_t a = 0; a < dirs.size(); ++a)
    kets.push_back(bloch_ket(w(static_cast<Eigen::Index>(a)), dirs[a].x(),
                             dirs[a].y(), dirs[a].z()));
  return Povm::from_kets(std::move(kets));
}

}  // namespace

Povm random_extremal_qubit_povm(std::size_t n, std::mt19937_64& rng) {
  constexpr double kMinWeight = 1e-6;
  if (n == 2) {
    const Eigen::Vector3d d = random_direction(rng);
    return from_directions({d, -d}, Eigen::Vector2d(1.0, 1.0));
  }
  if (n != 3 && n != 4)
    throw DomainError("random_extremal_qubit_povm: n must be 2, 3 or 4");
  for (;;) {
    std::vector<Eigen::Vector3d> dirs;
    // Completeness: sum_a w_a = 2 and sum_a w_a n_a = 0.
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n),
                      static_cast<Eigen::Index>(n));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    rhs(0) = 2.0;
    if (n == 4) {
      for (int a = 0; a < 4; ++a) dirs.push_back(random_direction(rng));
      for (int a = 0; a < 4; ++a) {
        m(0, a) = 1.0;
        m.block(1, a, 3, 1) = dirs[a];
      }
    } else {
      const Eigen::Vector3d u = random_direction(rng);
      Eigen::Vector3d v = random_direction(rng);
      v -= v.dot(u) * u;
      if (v.norm() < 1e-6) continue;
      v.normalize();
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      for (int a = 0; a < 3; ++a) {
        const double t = phase(rng);
        dirs.push_back(std::cos(t) * u + std::sin(t) * v);
        m(0, a) = 1.0;
        m(1, a) = std::cos(t);
        m(2, a) = std::sin(t);
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd w = lu.solve(rhs);
    if (w.minCoeff() <= kMinWeight) continue;
    return from_directions(dirs, w);
  }
}

}  // namespace randcert
