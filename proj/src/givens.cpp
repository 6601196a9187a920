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

#include "softpulse/givens.hpp"

#include "softpulse/su2.hpp"

namespace softpulse {

namespace {

constexpr double kPivotTol = 1e-13;
constexpr double kResidualTol = 1e-10;

std::pair<int, int> plane_indices(GivensKind kind) {
  switch (kind) {
    case GivensKind::Plane34: return {2, 3};
    case GivensKind::Plane14: return {0, 3};
    case GivensKind::Plane12: return {0, 1};
    case GivensKind::Plane23: return {1, 2};
    case GivensKind::Kron: break;
  }
  return {-1, -1};
}

// Rotation in the plane of `kind` sending (m(p, col), m(q, col)) to (0, |v|).
GivensFactor eliminate(GivensKind kind, const SU4Matrix& m, int col) {
  const auto [p, q] = plane_indices(kind);
  GivensFactor f{kind, SU2Matrix::Identity(), SU2Matrix::Identity()};
  const C2Vector v(m(p, col), m(q, col));
  if (v.norm() > kPivotTol) f.core = rotation_to_south(v);
  return f;
}

}  // namespace

SU2Matrix kron_left_factor() { return su2_exp(pauli_y(), kPi / 2); }

std::string_view to_string(GivensKind kind) {
  switch (kind) {
    case GivensKind::Kron: return "KRON";
    case GivensKind::Plane34: return "PLANE34";
    case GivensKind::Plane14: return "PLANE14";
    case GivensKind::Plane12: return "PLANE12";
    case GivensKind::Plane23: return "PLANE23";
  }
  return "?";
}

SU4Matrix materialize(const GivensFactor& f) {
  if (f.kind == GivensKind::Kron) return kron(f.left, f.core);
  const auto [p, q] = plane_indices(f.kind);
  SU4Matrix m = SU4Matrix::Identity();
  m(p, p) = f.core(0, 0);
  m(p, q) = f.core(0, 1);
  m(q, p) = f.core(1, 0);
  m(q, q) = f.core(1, 1);
  return m;
}

SU4Matrix product(const GivensFactors& factors) {
  SU4Matrix out = SU4Matrix::Identity();
  for (const auto& f : factors) out = out * materialize(f);
  return out;
}

GivensFactors givens_decompose(const SU4Matrix& s) {
  SU4Matrix m = s.adjoint();
  GivensFactors out;

  // S6: the shared spin-2 factor rotates the lower half of the last column
  // to the north pole, which after the block swap clears entry (2, 4).
  GivensFactor s6{GivensKind::Kron, SU2Matrix::Identity(), kron_left_factor()};
  const C2Vector tail(m(2, 3), m(3, 3));
  if (tail.norm() > kPivotTol) s6.core = rotation_to_north(tail);
  m = materialize(s6) * m;
  out[5] = s6;

  // Last column: {3,4} then {1,4} leave it equal to e4.
  out[4] = eliminate(GivensKind::Plane34, m, 3);
  m = materialize(out[4]) * m;
  out[3] = eliminate(GivensKind::Plane14, m, 3);
  m = materialize(out[3]) * m;

  // Third column within the leading 3x3 block: {1,2} then {2,3}.
  out[2] = eliminate(GivensKind::Plane12, m, 2);
  m = materialize(out[2]) * m;
  out[1] = eliminate(GivensKind::Plane23, m, 2);
  m = materialize(out[1]) * m;

  // The remaining 2x2 block has unit determinant; its inverse finishes.
  out[0] = GivensFactor{GivensKind::Plane12, m.topLeftCorner<2, 2>().adjoint(),
                        SU2Matrix::Identity()};
  m = materialize(out[0]) * m;

  const double residual = (m - SU4Matrix::Identity()).norm();
  if (!(residual <= kResidualTol))
    throw ReductionFailure("givens_decompose: residual " + std::to_string(residual) +
                           " after elimination");
  return out;
}

PhaseNormalized normalize_phase(const SU4Matrix& u) {
  const double phi = std::arg(u.determinant()) / 4.0;
  return {u * std::polar(1.0, -phi), phi};
}

}  // namespace softpulse
