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

#include "randcert/qobjects.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace randcert {

namespace pauli {

CMat I() { return identity(2); }

CMat X() {
  CMat m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMat Y() {
  CMat m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

CMat Z() {
  CMat m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

std::array<CMat, 4> basis() { return {I(), X(), Y(), Z()}; }

}  // namespace pauli

Angle::Angle(double radians) : radians_(radians) {
  constexpr double upper = std::numbers::pi / 2;
  if (!(radians > 0.0) || radians > upper + 1e-12) {
    std::ostringstream os;
    os << "theta must lie in (0, pi/2], got " << radians;
    throw DomainError(os.str());
  }
  radians_ = std::min(radians, upper);
}

double Angle::cos() const { return std::cos(radians_); }
double Angle::sin() const { return std::sin(radians_); }

std::vector<Angle> theta_grid(std::size_t n, double lower) {
  std::vector<Angle> grid;
  grid.reserve(n);
  const double upper = std::numbers::pi / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (i + 1 == n)
                         ? upper
                         : lower + (upper - lower) * static_cast<double>(i + 1) /
                                       static_cast<double>(n);
    grid.emplace_back(t);
  }
  return grid;
}

QState::QState(CMat rho, SubsystemShape shape)
    : rho_(std::move(rho)), shape_(std::move(shape)) {
  if (rho_.rows() != rho_.cols() ||
      static_cast<std::size_t>(rho_.rows()) != shape_.total())
    throw DimensionError("QState: matrix does not match subsystem dims");
  if (!is_hermitian(rho_))
    throw ContractError("QState: density operator is not Hermitian");
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "QState: trace is " << tr;
    throw ContractError(os.str());
  }
  const double lo = eigh(rho_).values.minCoeff();
  if (lo < -1e-10) {
    std::ostringstream os;
    os << "QState: negative eigenvalue " << lo;
    throw ContractError(os.str());
  }
}

QState QState::pure(const CVec& ket, SubsystemShape shape) {
  return QState(projector(ket), std::move(shape));
}

Dichotomic::Dichotomic(CMat op, std::string label)
    : op_(std::move(op)), label_(std::move(label)) {
  if (op_.rows() != op_.cols())
    throw DimensionError("Dichotomic: operator is not square");
  if (hermiticity_defect(op_) > 1e-10)
    throw ContractError("Dichotomic: " + label_ + " is not Hermitian");
  const double sq = max_abs(op_ * op_ - identity(op_.rows()));
  if (sq > 1e-10) {
    std::ostringstream os;
    os << "Dichotomic: " << label_ << " does not square to I (defect " << sq
       << ")";
    throw ContractError(os.str());
  }
}

Povm Povm::from_elements(std::vector<CMat> elements) {
  if (elements.empty()) throw DimensionError("Povm: no elements");
  for (const auto& e : elements)
    if (e.rows() != e.cols() || e.rows() != elements.front().rows())
      throw DimensionError("Povm: elements differ in shape");
  Povm p;
  p.elements_ = std::move(elements);
  return p;
}

Povm Povm::from_kets(std::vector<CVec> kets) {
  if (kets.empty()) throw DimensionError("Povm: no kets");
  Povm p;
  for (auto& k : kets) {
    if (k.size() != kets.front().size())
      throw DimensionError("Povm: kets differ in length");
    k = fix_global_phase(k);
    p.elements_.push_back(projector(k));
  }
  p.kets_ = std::move(kets);
  return p;
}

std::size_t Povm::dim() const {
  return elements_.empty() ? 0 : static_cast<std::size_t>(elements_[0].rows());
}

CVec psi_ket(Angle theta) {
  CVec v = CVec::Zero(4);
  v(0) = std::cos(theta.radians() / 2);
  v(3) = std::sin(theta.radians() / 2);
  return v;
}

QState psi_theta(Angle theta) {
  return QState::pure(psi_ket(theta), SubsystemShape({2, 2}, {"A", "B"}));
}

CMat psi_theta_pauli(Angle theta) {
  using namespace pauli;
  const double c = theta.cos(), s = theta.sin();
  return 0.25 * (kron(I(), I()) + c * (kron(I(), Z()) + kron(Z(), I())) +
                 s * (kron(X(), X()) - kron(Y(), Y())) + kron(Z(), Z()));
}

CVec phi_ket(Angle theta) {
  CVec v = CVec::Zero(4);
  v(1) = std::sin(theta.radians() / 2);
  v(2) = -std::cos(theta.radians() / 2);
  return v;
}

double beta_of_theta(Angle theta) {
  const double s = theta.sin();
  return 2.0 * theta.cos() / std::sqrt(1.0 + s * s);
}

QState ancilla_state(AncillaRealization realization) {
  CMat sigma = CMat::Zero(4, 4);
  if (realization == AncillaRealization::Pure) {
    sigma(0, 0) = 1.0;
  } else {
    sigma(0, 0) = 0.5;
    sigma(3, 3) = 0.5;
  }
  return QState(sigma, SubsystemShape({2, 2}, {"A'", "B'"}));
}

IdealMeasurements ideal_measurements(Angle theta,
                                     AncillaRealization realization) {
  using namespace pauli;
  const double beta = beta_of_theta(theta);
  const double lp = 1.0 + beta * beta / 4.0;
  const double lm = 1.0 - beta * beta / 4.0;
  const double zc = std::sqrt(lp / 2.0);
  const double xc = std::sqrt(lm / 2.0);
  const CMat a_prime = Z();
  const CMat b_prime = Z();
  const CMat id = I();

  const CMat zI = kron(Z(), id);
  const CMat xI = kron(X(), id);
  const CMat yB = kron(Y(), b_prime);
  const double r2 = std::sqrt(2.0);

  std::vector<Dichotomic> alice{
      Dichotomic(zI, "A1"),
      Dichotomic(xI, "A2"),
      Dichotomic(kron(Y(), a_prime), "A3"),
  };
  std::vector<Dichotomic> bob{
      Dichotomic(zc * zI + xc * xI, "B1"),
      Dichotomic(zc * zI - xc * xI, "B2"),
      Dichotomic(zc * zI - xc * yB, "B3"),
      Dichotomic(zc * zI + xc * yB, "B4"),
      Dichotomic((xI - yB) / r2, "B5"),
      Dichotomic((xI + yB) / r2, "B6"),
  };
  return IdealMeasurements{std::move(alice), std::move(bob),
                           ancilla_state(realization),
                           Dichotomic(a_prime, "A'"),
                           Dichotomic(b_prime, "B'")};
}

PovmValidity povm_validity(const Povm& p, double tolerance) {
  PovmValidity r;
  if (p.size() == 0) return r;
  CMat sum = CMat::Zero(p[0].rows(), p[0].cols());
  bool hermitian = true;
  for (const auto& e : p.elements()) {
    sum += e;
    if (hermiticity_defect(e) > tolerance) {
      hermitian = false;
      continue;
    }
    const CMat h = (e + e.adjoint()) * 0.5;
    r.max_psd_violation =
        std::max(r.max_psd_violation, -eigh(h).values.minCoeff());
  }
  r.completeness_residual = 0.5 * trace_norm(sum - identity(p.dim()));
  r.is_valid = hermitian && r.max_psd_violation <= tolerance &&
               r.completeness_residual <= tolerance;
  return r;
}

PovmExtremality povm_extremality(const Povm& p) {
  PovmExtremality r;
  if (p.size() == 0) return r;
  r.all_rank_one = true;
  for (const auto& e : p.elements()) {
    if (!is_hermitian(e, 1e-10)) {
      r.all_rank_one = false;
      break;
    }
    const CMat h = (e + e.adjoint()) * 0.5;
    const RVec ev = eigh(h).values;
    if (ev.size() > 1 && std::abs(ev(1)) > 1e-9) r.all_rank_one = false;
  }
  r.linearly_independent = null_space(p.elements()).empty();
  r.independence_margin = independence_margin(p.elements());
  r.is_extremal_candidate =
      r.all_rank_one && r.linearly_independent && p.size() >= 2;
  return r;
}

CVec bloch_ket(double weight, double nx, double ny, double nz) {
  CVec k(2);
  const double up = 1.0 + nz;
  if (up > 1e-14) {
    const double a = std::sqrt(up / 2.0);
    k(0) = a;
    k(1) = Complex(nx, ny) / std::sqrt(2.0 * up);
  } else {
    k(0) = 0.0;
    k(1) = 1.0;
  }
  return fix_global_phase(std::sqrt(weight) * k);
}

TetrahedralParams adjusted_tetrahedral_params(Angle theta) {
  const double c = theta.cos();
  return {1.0 / (2.0 + 2.0 * c), (3.0 + 4.0 * c) / (6.0 + 6.0 * c),
          -1.0 / (3.0 + 4.0 * c)};
}

Povm adjusted_tetrahedral(Angle theta, std::array<double, 3> deltas) {
  const auto prm = adjusted_tetrahedral_params(theta);
  const double sg = std::sqrt(1.0 - prm.cos_gamma * prm.cos_gamma);
  std::vector<CVec> kets{bloch_ket(prm.lambda1, 0.0, 0.0, 1.0)};
  for (double d : deltas)
    kets.push_back(bloch_ket(prm.lambda_rest, sg * std::cos(d),
                             sg * std::sin(d), prm.cos_gamma));
  return Povm::from_kets(std::move(kets));
}

MercedesParams modified_mercedes_params(Angle theta) {
  const double c = theta.cos();
  return {2.0 / (3.0 + 3.0 * c), (2.0 + 3.0 * c) / (3.0 + 3.0 * c),
          1.0 / (2.0 + 3.0 * c)};
}

Povm modified_mercedes(Angle theta) {
  const auto prm = modified_mercedes_params(theta);
  const double sx = std::sqrt(1.0 - prm.mu * prm.mu);
  return Povm::from_kets({bloch_ket(prm.lambda1, 0.0, 0.0, 1.0),
                          bloch_ket(prm.lambda23, sx, 0.0, -prm.mu),
                          bloch_ket(prm.lambda23, -sx, 0.0, -prm.mu)});
}

Povm near_y_tetrahedral(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    std::ostringstream os;
    os << "near_y_tetrahedral: epsilon must lie in (0, 1), got " << epsilon;
    throw DomainError(os.str());
  }
  const double y = std::sqrt(1.0 - epsilon * epsilon);
  return Povm::from_kets({bloch_ket(0.5, 0.0, y, epsilon),
                          bloch_ket(0.5, 0.0, y, -epsilon),
                          bloch_ket(0.5, epsilon, -y, 0.0),
                          bloch_ket(0.5, -epsilon, -y, 0.0)});
}

Povm conjugate_povm(const Povm& p) {
  if (p.kets()) {
    std::vector<CVec> kets;
    for (const auto& k : *p.kets()) kets.push_back(k.conjugate());
    return Povm::from_kets(std::move(kets));
  }
  std::vector<CMat> els;
  for (const auto& e : p.elements()) els.push_back(e.conjugate());
  return Povm::from_elements(std::move(els));
}

std::vector<double> outcome_probabilities(const Povm& p, const CMat& rho) {
  std::vector<double> probs;
  for (const auto& e : p.elements()) probs.push_back(trace_product_real(e, rho));
  return probs;
}

std::vector<CVec> kets_of(const Povm& p) {
  if (p.kets()) return *p.kets();
  std::vector<CVec> kets;
  for (const auto& e : p.elements()) {
    const Eigh d = eigh(e);
    if (d.values.size() > 1 && std::abs(d.values(1)) > 1e-9)
      throw ContractError("kets_of: POVM element is not rank one");
    kets.push_back(
        fix_global_phase(std::sqrt(std::max(d.values(0), 0.0)) * d.vectors.col(0)));
  }
  return kets;
}

}  // namespace randcert
