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

#include <array>
#include <cmath>
#include <numbers>

#include "randcert/matkernel.hpp"
#include "randcert/qobjects.hpp"
#include "test_support.hpp"

using namespace randcert;
using namespace randcert::testing;
using Catch::Matchers::WithinAbs;

TEST_CASE("kron of identities and diagonal Paulis", "[matkernel][kron]") {
  REQUIRE(max_abs(kron(pauli::I(), pauli::I()) - identity(4)) == 0.0);
  const CMat zz = kron(pauli::Z(), pauli::Z());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double expected = i == j ? (i == 0 || i == 3 ? 1.0 : -1.0) : 0.0;
      REQUIRE(zz(i, j) == cd(expected, 0.0));
    }
}

TEST_CASE("Pauli expansion of the maximally entangled state", "[matkernel][kron]") {
  using namespace pauli;
  const CMat rho = 0.25 * (kron(I(), I()) + kron(X(), X()) - kron(Y(), Y()) +
                           kron(Z(), Z()));
  REQUIRE_THAT(rho(0, 3).real(), WithinAbs(0.5, 1e-15));
  REQUIRE_THAT(rho(0, 0).real(), WithinAbs(0.5, 1e-15));
  REQUIRE_THAT(rho(1, 1).real(), WithinAbs(0.0, 1e-15));
}

TEST_CASE("kron index formula and associativity", "[matkernel][kron][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat a = random_matrix(2, 3, rng);
    const CMat b = random_matrix(3, 2, rng);
    const CMat c = random_matrix(2, 2, rng);
    const CMat ab = kron(a, b);
    REQUIRE(ab.rows() == 6);
    REQUIRE(ab.cols() == 6);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 2; ++l)
            REQUIRE(std::abs(ab(i * 3 + k, j * 2 + l) - a(i, j) * b(k, l)) < 1e-14);
    REQUIRE(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) < 1e-13);
    REQUIRE(max_abs(kron({a, b, c}) - kron(a, kron(b, c))) < 1e-13);
  }
  const CVec u = CVec::Random(2), v = CVec::Random(3);
  REQUIRE(max_abs(CMat(kron_ket(u, v)) - CMat(kron(CMat(u), CMat(v)))) < 1e-15);
}

TEST_CASE("partial trace examples", "[matkernel][partial_trace]") {
  const SubsystemShape ab({2, 2});
  const CMat bell = psi_theta(Angle::right()).rho();
  REQUIRE(max_abs(partial_trace(bell, ab, {0}) - identity(2) / 2.0) < 1e-15);

  const double t = 0.9;
  const CMat red = partial_trace(psi_theta(Angle(t)).rho(), ab, {0});
  REQUIRE_THAT(red(0, 0).real(), WithinAbs(std::pow(std::cos(t / 2), 2), 1e-15));
  REQUIRE_THAT(red(1, 1).real(), WithinAbs(std::pow(std::sin(t / 2), 2), 1e-15));
  REQUIRE(std::abs(red(0, 1)) < 1e-15);

  std::mt19937_64 rng(3);
  const CMat rho = random_density(8, rng);
  const CMat scalar = partial_trace(rho, SubsystemShape({2, 2, 2}),
                                    std::span<const std::size_t>{});
  REQUIRE(scalar.rows() == 1);
  REQUIRE_THAT(scalar(0, 0).real(), WithinAbs(1.0, 1e-14));
}

TEST_CASE("partial trace rejects inconsistent shapes", "[matkernel][partial_trace]") {
  REQUIRE_THROWS_AS(partial_trace(identity(4), SubsystemShape({2, 3}), {0}),
                    DimensionError);
  REQUIRE_THROWS_AS(partial_trace(identity(4), SubsystemShape({2, 2}), {2}),
                    DimensionError);
  REQUIRE_THROWS_AS(SubsystemShape({2, 0}), DimensionError);
}

TEST_CASE("partial trace of a product", "[matkernel][partial_trace][property]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat a = random_matrix(2, 2, rng);
    const CMat b = random_matrix(3, 3, rng);
    const SubsystemShape s({2, 3});
    REQUIRE(max_abs(partial_trace(kron(a, b), s, {0}) - b.trace() * a) < 1e-12);
    REQUIRE(max_abs(partial_trace(kron(a, b), s, {1}) - a.trace() * b) < 1e-12);
    // Trace is preserved.
    const CMat ab = kron(a, b);
    REQUIRE(std::abs(partial_trace(ab, s, {0}).trace() - ab.trace()) < 1e-12);
  }
  // Three factors, keeping the outer two.
  const CMat a = random_matrix(2, 2, rng), b = random_matrix(2, 2, rng),
             c = random_matrix(2, 2, rng);
  REQUIRE(max_abs(partial_trace(kron({a, b, c}), SubsystemShape({2, 2, 2}),
                                {2, 0}) -
                  b.trace() * kron(a, c)) < 1e-12);
}

TEST_CASE("permute_subsystems reorders tensor factors", "[matkernel][permute]") {
  std::mt19937_64 rng(8);
  const CMat a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng),
             c = random_matrix(2, 2, rng);
  const SubsystemShape s({2, 3, 2}, {"a", "b", "c"});
  const CMat p = permute_subsystems(kron({a, b, c}), s, {2, 0, 1});
  REQUIRE(max_abs(p - kron({c, a, b})) < 1e-14);
  const std::array<std::size_t, 3> order{2, 0, 1};
  const SubsystemShape ps = permute_shape(s, order);
  REQUIRE(ps.dims == std::vector<std::size_t>{2, 2, 3});
  REQUIRE(ps.names == std::vector<std::string>{"c", "a", "b"});
  REQUIRE_THROWS_AS(permute_subsystems(kron({a, b, c}), s, {0, 0, 1}),
                    DimensionError);
  REQUIRE_THROWS_AS(permute_subsystems(kron({a, b, c}), s, {0, 1}),
                    DimensionError);
}

TEST_CASE("eigh examples", "[matkernel][eigh]") {
  const Eigh z = eigh(pauli::Z());
  REQUIRE_THAT(z.values(0), WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(z.values(1), WithinAbs(-1.0, 1e-15));

  const Eigh p = eigh(psi_theta(Angle(0.7)).rho());
  REQUIRE_THAT(p.values(0), WithinAbs(1.0, 1e-14));
  for (int k = 1; k < 4; ++k) REQUIRE_THAT(p.values(k), WithinAbs(0.0, 1e-14));

  using namespace pauli;
  const CMat op = std::numbers::sqrt2 * (kron(Z(), Z()) + kron(X(), X()));
  const Eigh d = eigh(op);
  const double m = 2.0 * std::numbers::sqrt2;
  REQUIRE_THAT(d.values(0), WithinAbs(m, 1e-14));
  REQUIRE_THAT(d.values(1), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(d.values(2), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(d.values(3), WithinAbs(-m, 1e-14));
}

TEST_CASE("eigh rejects non-Hermitian input", "[matkernel][eigh]") {
  CMat m = pauli::X();
  m(0, 1) = 2.0;
  REQUIRE_THROWS_AS(eigh(m), ContractError);
  REQUIRE_THROWS_AS(eigh(CMat::Zero(2, 3)), ContractError);
}

TEST_CASE("eigh reconstructs random Hermitian matrices", "[matkernel][eigh][property]") {
  std::mt19937_64 rng(21);
  for (Eigen::Index n = 1; n <= 16; ++n) {
    const CMat h = random_hermitian(n, rng);
    const Eigh d = eigh(h);
    const CMat back = d.vectors * d.values.cast<cd>().asDiagonal() *
                      d.vectors.adjoint();
    REQUIRE(max_abs(back - h) <= tol::reconstruction);
    REQUIRE(max_abs(d.vectors.adjoint() * d.vectors - identity(n)) < 1e-12);
    for (Eigen::Index k = 1; k < n; ++k)
      REQUIRE(d.values(k - 1) >= d.values(k));
  }
}

TEST_CASE("trace norm examples", "[matkernel][trace_norm]") {
  REQUIRE_THAT(trace_norm(kron(0.5 * pauli::X(), identity(2) / 2.0)),
               WithinAbs(1.0, 1e-15));
  REQUIRE(trace_norm(CMat::Zero(3, 3)) == 0.0);
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -4.0;
  REQUIRE_THAT(trace_norm(d), WithinAbs(7.0, 1e-14));
}

TEST_CASE("trace norm is unitarily invariant", "[matkernel][trace_norm][property]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat m = random_matrix(4, 4, rng);
    const CMat u = random_unitary(4, rng), v = random_unitary(4, rng);
    REQUIRE_THAT(trace_norm(u * m * v), WithinAbs(trace_norm(m), 1e-12));
  }
}

TEST_CASE("null space examples", "[matkernel][null_space]") {
  using namespace pauli;
  const std::vector<CMat> indep{I(), X(), Z()};
  REQUIRE(null_space(indep).empty());
  REQUIRE(independence_margin(indep) > 0.5);

  const std::vector<CMat> dep{I(), X(), I() + X()};
  const auto ns = null_space(dep);
  REQUIRE(ns.size() == 1);
  const CVec v = fix_global_phase(ns[0]);
  const double s = 1.0 / std::sqrt(3.0);
  REQUIRE(std::abs(v(0) - s) < 1e-12);
  REQUIRE(std::abs(v(1) - s) < 1e-12);
  REQUIRE(std::abs(v(2) + s) < 1e-12);
  REQUIRE(independence_margin(dep) < 1e-12);
}

TEST_CASE("null space vectors annihilate the combination", "[matkernel][null_space][property]") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    // Five random 2x2 matrices always have a null space of dimension >= 1.
    std::vector<CMat> ms;
    for (int k = 0; k < 5; ++k) ms.push_back(random_matrix(2, 2, rng));
    const auto ns = null_space(ms);
    REQUIRE(ns.size() >= 1);
    for (const auto& c : ns) {
      CMat sum = CMat::Zero(2, 2);
      for (int k = 0; k < 5; ++k) sum += c(k) * ms[k];
      REQUIRE(sum.norm() <= 10 * tol::null_space * c.norm());
      REQUIRE_THAT(c.norm(), WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("fix_global_phase makes the first amplitude real", "[matkernel]") {
  CVec v(3);
  v << cd(0, 0), cd(0, 2), cd(1, 1);
  const CVec w = fix_global_phase(v);
  REQUIRE(std::abs(w(1) - cd(2, 0)) < 1e-15);
  REQUIRE(std::abs(std::abs(w(2)) - std::abs(v(2))) < 1e-15);
  REQUIRE(std::abs(w.dot(v)) == Catch::Approx(v.norm() * v.norm()).epsilon(1e-14));
}

TEST_CASE("hermiticity helpers", "[matkernel]") {
  REQUIRE(is_hermitian(pauli::Y()));
  CMat m = pauli::Y();
  m(0, 1) += 1e-11;
  REQUIRE_FALSE(is_hermitian(m));
  REQUIRE_THAT(trace_product_real(pauli::X(), pauli::X()), WithinAbs(2.0, 1e-15));
  REQUIRE_THROWS_AS(trace_product_real(CMat::Zero(2, 3), CMat::Zero(2, 3)),
                    DimensionError);
}
