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
#include "softpulse/su2.hpp"

using namespace softpulse;

namespace {

oracle::M2 ck_oracle(double alpha, double zeta, double mu) {
  oracle::M2 m;
  m << std::polar(std::cos(alpha), zeta), std::polar(std::sin(alpha), mu),
      std::polar(std::sin(alpha), M_PI - mu), std::polar(std::cos(alpha), -zeta);
  return m;
}

oracle::M2 euler_oracle(const EulerXYX& e) {
  using oracle::C;
  return oracle::expm_series<oracle::M2>(C(0, e.d) * oracle::sx()) *
         oracle::expm_series<oracle::M2>(C(0, e.e) * oracle::sy()) *
         oracle::expm_series<oracle::M2>(C(0, e.f) * oracle::sx());
}

}  // namespace

TEST_CASE("Cayley-Klein matrix matches the polar form", "[su2]") {
  CHECK(frob_dist(cayley_klein_matrix({0.3, 1.1, 4.0}), ck_oracle(0.3, 1.1, 4.0)) < 1e-15);
  CHECK(frob_dist(cayley_klein_matrix({0, 0, 0}), SU2Matrix::Identity()) == 0.0);
}

TEST_CASE("to_cayley_klein round-trips random SU(2)", "[su2][property]") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const SU2Matrix s = oracle::random_su<2>(rng);
    const CayleyKlein p = to_cayley_klein(s);
    CHECK(p.alpha >= 0.0);
    CHECK(p.alpha <= kPi / 2);
    CHECK(p.zeta >= 0.0);
    CHECK(p.zeta < kTwoPi);
    CHECK(p.mu >= 0.0);
    CHECK(p.mu < kTwoPi);
    CHECK(frob_dist(ck_oracle(p.alpha, p.zeta, p.mu), s) < 1e-13);
  }
}

TEST_CASE("to_cayley_klein fixes the free angle at the poles", "[su2]") {
  const CayleyKlein id = to_cayley_klein(SU2Matrix::Identity());
  CHECK(id.alpha == 0.0);
  CHECK(id.zeta == 0.0);
  CHECK(id.mu == 0.0);
  // exp(i pi/2 sy) = [[0, 1], [-1, 0]]
  const CayleyKlein flip = to_cayley_klein(su2_exp(pauli_y(), kPi / 2));
  CHECK(flip.alpha == Catch::Approx(kPi / 2));
  CHECK(flip.zeta == 0.0);
  CHECK(flip.mu == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("Euler x-y-x angles reconstruct random SU(2)", "[su2][property]") {
  std::mt19937_64 rng(202);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const SU2Matrix s = oracle::random_su<2>(rng);
    const EulerXYX e = euler_xyx(to_cayley_klein(s));
    for (double a : {e.d, e.e, e.f}) {
      CHECK(a >= 0.0);
      CHECK(a < kTwoPi);
    }
    worst = std::max(worst, frob_dist(euler_oracle(e), s));
    CHECK(frob_dist(euler_xyx_matrix(e), euler_oracle(e)) < 1e-13);
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Euler angles handle the degenerate axes", "[su2]") {
  const std::vector<SU2Matrix> cases = {
      SU2Matrix::Identity(),         -SU2Matrix::Identity(),
      su2_exp(pauli_x(), 0.9),       su2_exp(pauli_y(), 1.7),
      su2_exp(pauli_z(), 0.4),       su2_exp(pauli_y(), kPi / 2),
      su2_exp(pauli_x(), kPi / 2),   su2_exp(pauli_z(), kPi / 2)};
  for (const SU2Matrix& s : cases) {
    const EulerXYX e = euler_xyx(to_cayley_klein(s));
    CHECK(frob_dist(euler_oracle(e), s) < 1e-12);
  }
}

TEST_CASE("wrap_two_pi lands in [0, 2 pi)", "[su2]") {
  for (double a : {-13.0, -kTwoPi, -1e-300, 0.0, 1.0, kTwoPi, 40.0}) {
    const double w = wrap_two_pi(a);
    CHECK(w >= 0.0);
    CHECK(w < kTwoPi);
    CHECK(std::remainder(w - a, kTwoPi) == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("rotation_to_north and rotation_to_south send v to a pole", "[su2]") {
  std::mt19937_64 rng(303);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const C2Vector v(std::complex<double>(g(rng), g(rng)), std::complex<double>(g(rng), g(rng)));
    const SU2Matrix n = rotation_to_north(v), s = rotation_to_south(v);
    CHECK(is_su2(n));
    CHECK(is_su2(s));
    const C2Vector nv = n * v, sv = s * v;
    CHECK(std::abs(nv(0) - v.norm()) < 1e-14);
    CHECK(std::abs(nv(1)) < 1e-14);
    CHECK(std::abs(sv(0)) < 1e-14);
    CHECK(std::abs(sv(1) - v.norm()) < 1e-14);
  }
}

TEST_CASE("pole rotations reject a zero vector", "[su2]") {
  CHECK_THROWS_AS(rotation_to_north(C2Vector::Zero()), ZeroVector);
  CHECK_THROWS_AS(rotation_to_south(C2Vector(1e-15, 0.0)), ZeroVector);
}
