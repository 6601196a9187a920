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

#pragma once

#include <array>

#include "softpulse/matcore.hpp"

namespace softpulse {

// Block patterns of the six factors of S = S1 S2 S3 S4 S5 S6 (1-based
// row/column pairs): S6 = exp(i pi/2 sy) (x) K, S5 on {3,4}, S4 on {1,4},
// S3 and S1 on {1,2}, S2 on {2,3}.
enum class GivensKind { Kron, Plane34, Plane14, Plane12, Plane23 };

struct GivensFactor {
  GivensKind kind = GivensKind::Plane12;
  /// Embedded 2x2 block, or the spin-2 factor for Kron.
  SU2Matrix core = SU2Matrix::Identity();
  /// Spin-1 factor for Kron, always exp(i pi/2 sy).
  SU2Matrix left = SU2Matrix::Identity();
};

/// Ordered S1 ... S6.
using GivensFactors = std::array<GivensFactor, 6>;

/// exp(i pi/2 sy) = [[0, 1], [-1, 0]].
SU2Matrix kron_left_factor();

SU4Matrix materialize(const GivensFactor& f);

/// Ordered product S1 S2 ... S6.
SU4Matrix product(const GivensFactors& factors);

/// Factors a special unitary into the six-factor pattern by premultiplying
/// S^dagger with S6, S5, S4, S3, S2, S1 until it becomes the identity. Each
/// plane rotation sends its pivot pair to (0, |v|) so no residual diagonal
/// phase is left over. Throws ReductionFailure when the leftover deviates
/// from the identity by more than 1e-10.
GivensFactors givens_decompose(const SU4Matrix& s);

struct PhaseNormalized {
  SU4Matrix matrix;
  /// phi with input = e^{i phi} * matrix; phi = arg(det) / 4, principal branch.
  double removed_phase = 0.0;
};

/// Divides a unitary by the principal fourth root of its determinant.
PhaseNormalized normalize_phase(const SU4Matrix& u);

std::string_view to_string(GivensKind kind);

}  // namespace softpulse
