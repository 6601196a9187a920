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
#include "softpulse/givens.hpp"

using namespace softpulse;

namespace {

// Zero-based index pair a plane factor may touch.
std::pair<int, int> plane_of(GivensKind k) {
  switch (k) {
    case GivensKind::Plane12: return {0, 1};
    case GivensKind::Plane23: return {1, 2};
    case GivensKind::Plane14: return {0, 3};
    case GivensKind::Plane34: return {2, 3};
    case GivensKind::Kron: break;
  }
  return {-1, -1};
}

bool follows_plane_pattern(const SU4Matrix& m, int i, int j) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const bool inside = (r == i || r == j) && (c == i || c == j);
      if (inside) continue;
      const std::complex<double> expected = r == c ? 1.0 : 0.0;
      if (std::abs(m(r, c) - expected) > 1e-14) return false;
    }
  return true;
}

void check_factorization(const SU4Matrix& s) {
  const GivensFactors f = givens_decompose(s);
  CHECK(frob_dist(product(f), s) < 1e-12);
  const std::array<GivensKind, 6> kinds = {GivensKind::Plane12, GivensKind::Plane23,
                                           GivensKind::Plane12, GivensKind::Plane14,
                                           GivensKind::Plane34, GivensKind::Kron};
  for (int k = 0; k < 6; ++k) {
    INFO("factor S" << k + 1);
    CHECK(f[k].kind == kinds[k]);
    CHECK(is_su2(f[k].core));
    const SU4Matrix m = materialize(f[k]);
    CHECK(is_su4(m));
    if (f[k].kind == GivensKind::Kron) {
      CHECK(frob_dist(m, oracle::kron(kron_left_factor(), f[k].core)) < 1e-15);
    } else {
      const auto [i, j] = plane_of(f[k].kind);
      CHECK(follows_plane_pattern(m, i, j));
    }
  }
}

}  // namespace

TEST_CASE("the fixed spin-1 factor is exp(i pi/2 sy)", "[givens]") {
  SU2Matrix expected;
  expected << 0, 1, -1, 0;
  CHECK(frob_dist(kron_left_factor(), expected) < 1e-16);
}

TEST_CASE("random SU(4) factor into the six block patterns", "[givens][property]") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 200; ++trial) check_factorization(oracle::random_su<4>(rng));
}

TEST_CASE("structured targets factor exactly", "[givens]") {
  check_factorization(SU4Matrix::Identity());
  check_factorization(generator_exp(Generator::ZZ, 0.7));
  check_factorization(generator_exp(Generator::X1, 1.2) * generator_exp(Generator::Y2, -0.4));
  SU4Matrix swap = SU4Matrix::Zero();
  swap(0, 0) = swap(3, 3) = 1;
  swap(1, 2) = swap(2, 1) = 1;
  check_factorization(swap * std::polar(1.0, -kPi / 4));  // det(swap) = -1
  SU4Matrix perm = SU4Matrix::Zero();
  perm(0, 3) = perm(1, 0) = perm(2, 1) = 1;
  perm(3, 2) = -1;
  check_factorization(perm);
}

TEST_CASE("identity factors into cancelling pieces", "[givens]") {
  const GivensFactors f = givens_decompose(SU4Matrix::Identity());
  CHECK(frob_dist(product(f), SU4Matrix::Identity()) < 1e-15);
  // The spin-1 half of S6 is fixed, so S6 itself cannot be the identity.
  CHECK(frob_dist(materialize(f[5]), SU4Matrix::Identity()) > 1.0);
}

TEST_CASE("non-unitary input is rejected", "[givens]") {
  SU4Matrix m = SU4Matrix::Identity();
  m(0, 0) = 2.0;
  CHECK_THROWS_AS(givens_decompose(m), Error);
}

TEST_CASE("normalize_phase removes the principal fourth root of the determinant", "[givens]") {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 50; ++trial) {
    const SU4Matrix s = oracle::random_su<4>(rng);
    const double phi = std::uniform_real_distribution<double>(-0.78, 0.78)(rng);
    const PhaseNormalized n = normalize_phase(std::polar(1.0, phi) * s);
    CHECK(n.removed_phase == Catch::Approx(phi).margin(1e-12));
    CHECK(frob_dist(n.matrix, s) < 1e-12);
    CHECK(is_su4(n.matrix));
  }
  const PhaseNormalized n = normalize_phase(std::complex<double>(0, 1) * SU4Matrix::Identity());
  CHECK(std::abs(n.removed_phase) < 1e-15);  // i^4 = 1, already special
}
