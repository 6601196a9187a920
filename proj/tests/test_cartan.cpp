// Copyright 2026 The softpulse Authors
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

#include "oracles.hpp"
#include "softpulse/cartan.hpp"
#include "softpulse/su2.hpp"

using namespace softpulse;

namespace {

SU2Matrix diag_phase(double eta) { return su2_exp(pauli_z(), eta); }

}  // namespace

TEST_CASE("the Cartan core is exp(-i t1 XX) exp(-i t2 YY) exp(-i t3 ZZ)", "[cartan]") {
  using oracle::kron;
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    CartanParams c;
    c.theta1 = angle(rng);
    c.theta2 = angle(rng);
    c.theta3 = angle(rng);
    const oracle::M4 expected = oracle::evolve<oracle::M4>(kron(oracle::sx(), oracle::sx()), c.theta1) *
                                oracle::evolve<oracle::M4>(kron(oracle::sy(), oracle::sy()), c.theta2) *
                                oracle::evolve<oracle::M4>(kron(oracle::sz(), oracle::sz()), c.theta3);
    CHECK(frob_dist(reconstruct_cartan(c), expected) < 1e-12);
  }
}

TEST_CASE("local factors enter as Kronecker products on both sides", "[cartan]") {
  std::mt19937_64 rng(607);
  CartanParams c;
  c.k1 = oracle::random_su<2>(rng);
  c.k2 = oracle::random_su<2>(rng);
  c.k3 = oracle::random_su<2>(rng);
  c.k4 = oracle::random_su<2>(rng);
  CartanParams core;
  core.theta1 = c.theta1 = 0.3;
  core.theta2 = c.theta2 = -1.2;
  core.theta3 = c.theta3 = 2.5;
  const SU4Matrix expected =
      oracle::kron(c.k1, c.k2) * reconstruct_cartan(core) * oracle::kron(c.k3, c.k4);
  CHECK(frob_dist(reconstruct_cartan(c), expected) < 1e-13);
}

TEST_CASE("PQR parameters round-trip through the thetas", "[cartan]") {
  CartanParams c;
  set_thetas(c, {0.1, -0.25, 0.7});
  CHECK(c.theta1 == Catch::Approx(2 * (0.7 + 0.1)));
  CHECK(c.theta2 == Catch::Approx(2 * (0.7 - 0.1)));
  CHECK(c.theta3 == Catch::Approx(-1.0));
  const PQRParams pqr = to_pqr(c);
  CHECK(pqr.p == Catch::Approx(0.1));
  CHECK(pqr.q == Catch::Approx(-0.25));
  CHECK(pqr.r == Catch::Approx(0.7));
}

TEST_CASE("alpha-Q roots satisfy the closed-form invariants", "[cartan][property]") {
  std::mt19937_64 rng(608);
  std::uniform_real_distribution<double> a5(0.01, kPi / 2 - 0.01), z5(0.0, kTwoPi);
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha5 = a5(rng), zeta5 = z5(rng);
    const AlphaQ root = solve_alpha_q(alpha5, zeta5);
    const AlphaQResiduals r = alpha_q_residuals(root, alpha5, zeta5);
    CHECK(std::abs(r.modulus) < 1e-11);
    CHECK(std::abs(r.phase) < 1e-11);
    CHECK(root.alpha >= 0.0);
    CHECK(root.alpha <= kPi / 2);
    // Eliminating alpha: cos 8Q = +-cos a5 cos z5; then cos 2a sin 8Q = +-cos a5 sin z5.
    const double w = 8 * root.q;
    CHECK(std::abs(std::cos(w)) ==
          Catch::Approx(std::abs(std::cos(alpha5) * std::cos(zeta5))).margin(1e-9));
    CHECK(std::abs(std::cos(2 * root.alpha) * std::sin(w)) ==
          Catch::Approx(std::abs(std::cos(alpha5) * std::sin(zeta5))).margin(1e-9));
  }
}

TEST_CASE("the block of K2 exp(8iQ sz) K2^H has the requested modulus and phase", "[cartan]") {
  std::mt19937_64 rng(609);
  std::uniform_real_distribution<double> a5(0.05, kPi / 2 - 0.05), z5(0.0, kTwoPi);
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha5 = a5(rng), zeta5 = z5(rng);
    const AlphaQ root = solve_alpha_q(alpha5, zeta5);
    // Any mu gives the same diagonal, so mu = 0 suffices here.
    const SU2Matrix k = cayley_klein_matrix({root.alpha, 0.0, 0.0});
    const SU2Matrix block = k * diag_phase(8 * root.q) * k.adjoint();
    CHECK(std::abs(block(0, 0)) == Catch::Approx(std::cos(alpha5)).margin(1e-10));
    const double arg_diff = std::remainder(std::arg(block(0, 0)) - zeta5, kPi);
    CHECK(std::abs(arg_diff) < 1e-9);
  }
}

TEST_CASE("solve_eta satisfies its linear system", "[cartan]") {
  for (auto [z, m] : {std::pair{0.3, 1.1}, {4.0, 0.0}, {-2.0, 5.5}}) {
    const Eta e = solve_eta(z, m);
    CHECK(e.eta1 + e.eta2 + e.eta3 == Catch::Approx(0.0).margin(1e-15));
    CHECK(e.eta1 - e.eta2 + e.eta3 == Catch::Approx(z));
    CHECK(e.eta1 - e.eta2 - e.eta3 == Catch::Approx(m + kPi / 2));
  }
}

TEST_CASE("Kron factors use the fixed pattern", "[cartan]") {
  std::mt19937_64 rng(610);
  GivensFactor f;
  f.kind = GivensKind::Kron;
  f.left = kron_left_factor();
  f.core = oracle::random_su<2>(rng);
  const CartanResult r = cartan_for_kron(f);
  CHECK(r.route == CartanRoute::Recipe);
  CHECK(frob_dist(r.params.k1, kron_left_factor()) == 0.0);
  CHECK(frob_dist(r.params.k2, f.core) == 0.0);
  CHECK(r.params.theta1 == 0.0);
  CHECK(r.params.theta2 == 0.0);
  CHECK(r.params.theta3 == 0.0);
  CHECK(r.residual < 1e-14);
}

TEST_CASE("every factor kind of random targets is reconstructed", "[cartan][property]") {
  std::mt19937_64 rng(611);
  int fallbacks = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const GivensFactors g = givens_decompose(oracle::random_su<4>(rng));
    const std::vector<CartanResult> parts = cartan_decompose(g);
    REQUIRE(parts.size() == 6);
    for (int k = 0; k < 6; ++k) {
      INFO("factor S" << k + 1 << " route " << to_string(parts[k].route));
      CHECK(frob_dist(reconstruct_cartan(parts[k].params), materialize(g[k])) < 1e-10);
      CHECK(parts[k].residual == Catch::Approx(
                                     frob_dist(reconstruct_cartan(parts[k].params), materialize(g[k])))
                                     .margin(1e-15));
      if (g[k].kind == GivensKind::Kron || g[k].kind == GivensKind::Plane23 ||
          g[k].kind == GivensKind::Plane14)
        CHECK_FALSE(parts[k].fallback_used());
      fallbacks += parts[k].fallback_used();
    }
  }
  CHECK(fallbacks < 360);
}

TEST_CASE("plane factors with degenerate blocks still reconstruct", "[cartan]") {
  for (GivensKind kind : {GivensKind::Plane12, GivensKind::Plane34, GivensKind::Plane23,
                          GivensKind::Plane14}) {
    for (const SU2Matrix& core :
         {SU2Matrix(SU2Matrix::Identity()), SU2Matrix(-SU2Matrix::Identity()),
          su2_exp(pauli_y(), kPi / 2), su2_exp(pauli_z(), 0.8), su2_exp(pauli_x(), 1.3)}) {
      GivensFactor f;
      f.kind = kind;
      f.core = core;
      const CartanResult r = cartan_for_factor(f);
      INFO(to_string(kind) << " route " << to_string(r.route));
      CHECK(frob_dist(reconstruct_cartan(r.params), materialize(f)) < 1e-9);
    }
  }
}

TEST_CASE("least-squares refinement recovers a perturbed parameter set", "[cartan]") {
  std::mt19937_64 rng(612);
  CartanParams truth;
  truth.k1 = oracle::random_su<2>(rng);
  truth.k2 = oracle::random_su<2>(rng);
  truth.k3 = oracle::random_su<2>(rng);
  truth.k4 = oracle::random_su<2>(rng);
  truth.theta1 = 0.4;
  truth.theta2 = -0.9;
  truth.theta3 = 1.3;
  const SU4Matrix target = reconstruct_cartan(truth);
  CartanParams seed = truth;
  seed.theta1 += 0.05;
  seed.theta3 -= 0.04;
  seed.k2 = seed.k2 * su2_exp(pauli_x(), 0.03);
  const CartanResult r = refine_least_squares(seed, target);
  CHECK(r.route == CartanRoute::LeastSquares);
  CHECK(r.residual < 1e-10);
  CHECK(frob_dist(reconstruct_cartan(r.params), target) < 1e-10);
}
