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
#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "randcert/qobjects.hpp"
#include "test_support.hpp"

using namespace randcert;
using namespace randcert::testing;
using Catch::Matchers::WithinAbs;

namespace {

double bloch_component(const CMat& e, const CMat& p) {
  return trace_product_real(e, p);
}

}  // namespace

TEST_CASE("Angle range", "[qobjects][angle]") {
  REQUIRE(Angle(0.5).radians() == 0.5);
  REQUIRE(Angle::right().radians() == std::numbers::pi / 2);
  REQUIRE_THROWS_AS(Angle(0.0), DomainError);
  REQUIRE_THROWS_AS(Angle(-0.1), DomainError);
  REQUIRE_THROWS_AS(Angle(2.0), DomainError);
  const auto grid = theta_grid(50);
  REQUIRE(grid.size() == 50);
  REQUIRE(grid.front().radians() > 0.01);
  REQUIRE(grid.back().radians() == std::numbers::pi / 2);
}

TEST_CASE("psi_theta examples", "[qobjects][state]") {
  const CMat bell = psi_theta(Angle::right()).rho();
  REQUIRE_THAT(bell(0, 0).real(), WithinAbs(0.5, 1e-15));
  REQUIRE_THAT(bell(0, 3).real(), WithinAbs(0.5, 1e-15));

  const CMat third = psi_theta(Angle(std::numbers::pi / 3)).rho();
  REQUIRE_THAT(third(0, 0).real(), WithinAbs(0.75, 1e-15));

  for (double t : {0.1, 0.7, std::numbers::pi / 2}) {
    REQUIRE(max_abs(psi_theta(Angle(t)).rho() - psi_theta_pauli(Angle(t))) <= 1e-12);
  }
}

TEST_CASE("psi_theta marginals", "[qobjects][state][property]") {
  for (const Angle& a : theta_grid(20)) {
    const CMat rho = psi_theta(a).rho();
    const SubsystemShape s({2, 2});
    const double t = a.radians();
    CMat expected = CMat::Zero(2, 2);
    expected(0, 0) = std::pow(std::cos(t / 2), 2);
    expected(1, 1) = std::pow(std::sin(t / 2), 2);
    REQUIRE(max_abs(partial_trace(rho, s, {0}) - expected) <= 1e-12);
    REQUIRE(max_abs(partial_trace(rho, s, {1}) - expected) <= 1e-12);
  }
}

TEST_CASE("phi_theta is orthogonal to psi_theta", "[qobjects][state]") {
  const Angle a(0.8);
  REQUIRE(std::abs(phi_ket(a).dot(psi_ket(a))) < 1e-15);
  REQUIRE_THAT(phi_ket(a).norm(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("QState validation", "[qobjects][state]") {
  const SubsystemShape q({2});
  REQUIRE_THROWS_AS(QState(identity(2), q), ContractError);         // trace 2
  REQUIRE_THROWS_AS(QState(identity(2) / 2.0, SubsystemShape({3})),
                    DimensionError);
  CMat neg = CMat::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  REQUIRE_THROWS_AS(QState(neg, q), ContractError);
  REQUIRE_THROWS_AS(QState(pauli::Y() + identity(2) / 2.0 + pauli::X() * cd(0, 1), q),
                    ContractError);
}

TEST_CASE("beta of theta", "[qobjects][beta]") {
  REQUIRE_THAT(beta_of_theta(Angle::right()), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(beta_of_theta(Angle(std::numbers::pi / 3)),
               WithinAbs(2.0 / std::sqrt(7.0), 1e-15));
  REQUIRE_THAT(beta_of_theta(Angle(std::numbers::pi / 3)),
               WithinAbs(0.7559289, 1e-7));
  REQUIRE(beta_of_theta(Angle(0.001)) < 2.0);
  REQUIRE(beta_of_theta(Angle(0.001)) > 1.99);
}

TEST_CASE("ideal measurements", "[qobjects][measurements]") {
  for (auto real : {AncillaRealization::Pure, AncillaRealization::Mixed}) {
    for (double t : {0.2, 1.0, std::numbers::pi / 2}) {
      const IdealMeasurements m = ideal_measurements(Angle(t), real);
      REQUIRE(m.alice.size() == 3);
      REQUIRE(m.bob.size() == 6);
      for (const auto* side : {&m.alice, &m.bob})
        for (const Dichotomic& d : *side) {
          REQUIRE(max_abs(d.op() * d.op() - identity(4)) <= 1e-10);
          REQUIRE(is_hermitian(d.op(), 1e-12));
        }
      // A1 anticommutes with A2 and with A3.
      const CMat& a1 = m.alice[0].op();
      REQUIRE(max_abs(a1 * m.alice[1].op() + m.alice[1].op() * a1) <= 1e-10);
      REQUIRE(max_abs(a1 * m.alice[2].op() + m.alice[2].op() * a1) <= 1e-10);
      // The ancillas are perfectly correlated.
      REQUIRE_THAT(trace_product_real(kron(m.a_prime.op(), m.b_prime.op()),
                                      m.ancilla.rho()),
                   WithinAbs(1.0, 1e-15));
    }
  }
  const IdealMeasurements m = ideal_measurements(Angle::right());
  const CMat b1 = kron((pauli::Z() + pauli::X()) / std::sqrt(2.0), identity(2));
  REQUIRE(max_abs(m.bob[0].op() - b1) < 1e-15);
}

TEST_CASE("Dichotomic validation", "[qobjects][measurements]") {
  REQUIRE_THROWS_AS(Dichotomic(2.0 * pauli::Z(), "bad"), ContractError);
  REQUIRE_THROWS_AS(Dichotomic(CMat::Zero(2, 3), "bad"), DimensionError);
  CMat nh = pauli::X();
  nh(0, 1) = cd(0, 1);
  nh(1, 0) = cd(0, 1);
  REQUIRE_THROWS_AS(Dichotomic(nh, "bad"), ContractError);
}

TEST_CASE("povm_validity examples", "[qobjects][povm]") {
  using namespace pauli;
  const auto v1 = povm_validity(Povm::from_elements({I() / 2.0, I() / 2.0}));
  REQUIRE(v1.is_valid);
  const auto v2 = povm_validity(
      Povm::from_elements({(I() + Z()) / 2.0, (I() - Z()) / 2.0}));
  REQUIRE(v2.is_valid);
  const auto v3 = povm_validity(
      Povm::from_elements({1.1 * (I() + Z()) / 2.0, (I() - Z()) / 2.0}));
  REQUIRE_FALSE(v3.is_valid);
  REQUIRE_THAT(v3.completeness_residual, WithinAbs(0.05, 1e-12));
  const auto v4 = povm_validity(
      Povm::from_elements({(I() + 2.0 * Z()) / 2.0, (I() - 2.0 * Z()) / 2.0}));
  REQUIRE_FALSE(v4.is_valid);
  REQUIRE_THAT(v4.max_psd_violation, WithinAbs(0.5, 1e-12));
}

TEST_CASE("povm_extremality examples", "[qobjects][povm]") {
  for (double t : {0.3, 1.0, std::numbers::pi / 2}) {
    const auto e = povm_extremality(adjusted_tetrahedral(Angle(t)));
    REQUIRE(e.all_rank_one);
    REQUIRE(e.linearly_independent);
    REQUIRE(e.is_extremal_candidate);
  }
  const auto half = povm_extremality(
      Povm::from_elements({pauli::I() / 2.0, pauli::I() / 2.0}));
  REQUIRE_FALSE(half.all_rank_one);
  REQUIRE_FALSE(half.is_extremal_candidate);

  // The near-Y family at zero offset: pairs of equal elements.
  const Povm flat = Povm::from_kets(
      {bloch_ket(0.5, 0, 1, 0), bloch_ket(0.5, 0, 1, 0),
       bloch_ket(0.5, 0, -1, 0), bloch_ket(0.5, 0, -1, 0)});
  REQUIRE(povm_validity(flat).is_valid);
  REQUIRE_FALSE(povm_extremality(flat).linearly_independent);
}

TEST_CASE("adjusted tetrahedral parameters", "[qobjects][tetrahedral]") {
  const auto r = adjusted_tetrahedral_params(Angle::right());
  REQUIRE_THAT(r.lambda1, WithinAbs(0.5, 1e-15));
  REQUIRE_THAT(r.cos_gamma, WithinAbs(-1.0 / 3.0, 1e-15));
  const auto t = adjusted_tetrahedral_params(Angle(std::numbers::pi / 3));
  REQUIRE_THAT(t.lambda1, WithinAbs(1.0 / 3.0, 1e-15));
  REQUIRE_THAT(t.lambda_rest, WithinAbs(5.0 / 9.0, 1e-15));
  REQUIRE_THAT(t.cos_gamma, WithinAbs(-0.2, 1e-15));

  // First element is lambda1 |0><0|.
  const Povm p = adjusted_tetrahedral(Angle(std::numbers::pi / 3));
  CMat e0 = CMat::Zero(2, 2);
  e0(0, 0) = 1.0 / 3.0;
  REQUIRE(max_abs(p[0] - e0) < 1e-15);
}

TEST_CASE("modified Mercedes parameters", "[qobjects][mercedes]") {
  const auto r = modified_mercedes_params(Angle::right());
  REQUIRE_THAT(r.lambda1, WithinAbs(2.0 / 3.0, 1e-15));
  REQUIRE_THAT(r.mu, WithinAbs(0.5, 1e-15));
  for (const Angle& a : theta_grid(20)) {
    const auto m = modified_mercedes_params(a);
    REQUIRE_THAT(m.lambda1 + 2.0 * m.lambda23, WithinAbs(2.0, 1e-14));
  }
}

TEST_CASE("stock POVMs are valid on the grid", "[qobjects][povm][property]") {
  for (const Angle& a : theta_grid(20)) {
    for (const Povm& p : {adjusted_tetrahedral(a), modified_mercedes(a)}) {
      const auto v = povm_validity(p);
      REQUIRE(v.max_psd_violation <= 1e-12);
      REQUIRE(v.completeness_residual <= 1e-12);
      REQUIRE(povm_extremality(p).is_extremal_candidate);
    }
    // Tetrahedral outcomes are uniform on Alice's marginal.
    const CMat rho_a = partial_trace(psi_theta(a).rho(), SubsystemShape({2, 2}), {0});
    for (double q : outcome_probabilities(adjusted_tetrahedral(a), rho_a))
      REQUIRE_THAT(q, WithinAbs(0.25, 1e-12));
    for (double q : outcome_probabilities(modified_mercedes(a), rho_a))
      REQUIRE_THAT(q, WithinAbs(1.0 / 3.0, 1e-12));
  }
}

TEST_CASE("tetrahedral angles are a parameter", "[qobjects][tetrahedral]") {
  const Angle a(0.9);
  const Povm p = adjusted_tetrahedral(a, {0.3, 0.3 + 2 * std::numbers::pi / 3,
                                          0.3 + 4 * std::numbers::pi / 3});
  REQUIRE(povm_validity(p).is_valid);
  REQUIRE(max_abs(p[0] - adjusted_tetrahedral(a)[0]) < 1e-15);
}

TEST_CASE("near-Y POVM", "[qobjects][near_y]") {
  const Povm half = near_y_tetrahedral(0.5);
  REQUIRE(povm_validity(half).is_valid);
  REQUIRE(povm_extremality(half).is_extremal_candidate);

  const Povm tiny = near_y_tetrahedral(1e-4);
  const auto v = povm_validity(tiny);
  REQUIRE(v.completeness_residual <= 1e-15);
  const auto e = povm_extremality(tiny);
  REQUIRE(e.is_extremal_candidate);
  // Margin shrinks with epsilon but stays well above the null-space cut.
  REQUIRE(e.independence_margin > tol::null_space);
  REQUIRE(e.independence_margin < 1e-3);

  for (double eps : {0.0, 1.0, -0.2, 1.5})
    REQUIRE_THROWS_AS(near_y_tetrahedral(eps), DomainError);

  for (std::size_t a = 0; a < 4; ++a)
    REQUIRE_THAT(tiny[a].trace().real(), WithinAbs(0.5, 1e-15));
}

TEST_CASE("conjugate_povm", "[qobjects][conjugate]") {
  const Povm mer = modified_mercedes(Angle(0.6));
  const Povm cm = conjugate_povm(mer);
  for (std::size_t a = 0; a < 3; ++a) REQUIRE(max_abs(cm[a] - mer[a]) == 0.0);

  const Povm ny = near_y_tetrahedral(0.3);
  const Povm cy = conjugate_povm(ny);
  for (std::size_t a = 0; a < 4; ++a) {
    REQUIRE_THAT(bloch_component(cy[a], pauli::Y()),
                 WithinAbs(-bloch_component(ny[a], pauli::Y()), 1e-15));
    REQUIRE_THAT(bloch_component(cy[a], pauli::X()),
                 WithinAbs(bloch_component(ny[a], pauli::X()), 1e-15));
    REQUIRE_THAT(bloch_component(cy[a], pauli::Z()),
                 WithinAbs(bloch_component(ny[a], pauli::Z()), 1e-15));
  }
  REQUIRE(povm_validity(cy).is_valid);
  const Povm back = conjugate_povm(cy);
  for (std::size_t a = 0; a < 4; ++a) REQUIRE(max_abs(back[a] - ny[a]) < 1e-15);
}

TEST_CASE("kets follow the phase convention", "[qobjects][povm]") {
  const Povm p = adjusted_tetrahedral(Angle(1.1));
  REQUIRE(p.kets().has_value());
  for (std::size_t a = 0; a < p.size(); ++a) {
    const CVec& k = (*p.kets())[a];
    REQUIRE(max_abs(projector(k) - p[a]) <= 1e-15);
    REQUIRE(k(0).imag() == 0.0);
    REQUIRE(k(0).real() > 0.0);
  }
  // Kets recovered from elements agree with the stored ones.
  const Povm bare = Povm::from_elements(p.elements());
  const auto ks = kets_of(bare);
  for (std::size_t a = 0; a < p.size(); ++a)
    REQUIRE(max_abs(CMat(ks[a] - (*p.kets())[a])) < 1e-12);
  REQUIRE_THROWS_AS(kets_of(Povm::from_elements({identity(2) / 2.0})),
                    ContractError);
}
