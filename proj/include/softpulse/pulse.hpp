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

#include <span>
#include <vector>

#include "softpulse/cartan.hpp"

namespace softpulse {

/// One factor exp(-i t G) of the native word, t in [0, 2 pi).
struct WordFactor {
  Generator gen = Generator::ZZ;
  double t = 0.0;
};

/// Left-to-right product of exp(-i t_k G_k).
using FactorWord = std::vector<WordFactor>;

SU4Matrix word_product(std::span<const WordFactor> word);

/// Flattens Cartan parameter sets (in product order) into the native word.
/// Each K is expanded into x-y-x Euler angles; exp(i D s) becomes
/// exp(-i t S) with t = (2 pi - D) mod 2 pi. Factors with t below 1e-13 are
/// dropped.
FactorWord word_from_cartan(std::span<const CartanParams> parts);

/// Word for K1 (x) K2: x-y-x Euler factors on spin 1, then spin 2.
FactorWord word_from_local(const SU2Matrix& k1, const SU2Matrix& k2);

/// Free-evolution time realizing exp(-i theta ZZ) for theta in (-2 pi, 2 pi).
double free_time(double theta);

/// exp(-i L gen) = exp(-i pre ZZ) exp(-i sign L mid) exp(-i post ZZ).
struct ConjugationIdentity {
  double pre_drift = 0.0;
  Generator mid = Generator::YZ;
  double post_drift = 0.0;
  int sign = 1;
};

/// Looked up in a table built once by exhaustive search and validated
/// against expm_oracle. Throws IdentityNotFound for non one-spin generators.
const ConjugationIdentity& conjugation_identity(Generator gen);

/// Rotating-frame piece exp(-i (a ZZ + b gen)). A pure drift has b = 0.
struct Segment {
  double a = 0.0;
  double b = 0.0;
  Generator gen = Generator::X1;
};

struct RotSchedule {
  /// Product order: the propagator is segments[0] * segments[1] * ...
  std::vector<Segment> segments;
  double c_bound = 0.0;
  double d_bound = 0.0;
};

/// Closed form cos(l) I - i sin(l) (a ZZ + b G) / l with l = hypot(a, b).
SU4Matrix segment_propagator(const Segment& s);

/// Number of equal chunks used for a rotation angle under the bounds. Throws
/// InvalidBound for non-positive bounds or bounds needing over 1e7 chunks.
int chunk_count(double angle, double c_bound, double d_bound);

/// Smallest r >= 2 for which angle / r meets the bounds in the cos > 0
/// branch. Since the per-chunk extremes grow with |angle / r|, the count for
/// pi serves every |angle| <= pi.
int split_chunk_count(double angle, double c_bound, double d_bound);

/// Schedule for exp(-i L gen) meeting a > 0, |b| <= c_bound and
/// |b / a| <= d_bound, using at least `min_chunks` chunks. Throws
/// InvalidBound unless both bounds are positive.
RotSchedule compile_rotation(double angle, Generator gen, double c_bound, double d_bound,
                             int min_chunks = 1);

/// Compiles a whole word. ZZ factors become single drift segments; one-spin
/// rotation angles are taken in (-pi, pi] before compilation.
RotSchedule compile_word(std::span<const WordFactor> word, double c_bound, double d_bound);

struct ConstraintSummary {
  bool o1 = true;          // every a > 0
  bool o2 = true;          // every |b| <= c_bound
  bool amplitude = true;   // every |b / a| <= d_bound
  double min_a = 0.0;
  double max_abs_b = 0.0;
  double max_ratio = 0.0;
  std::size_t segment_count = 0;
  double drift_area = 0.0;  // sum of a
  bool ok() const { return o1 && o2 && amplitude; }
};

ConstraintSummary check_constraints(const RotSchedule& rs);

}  // namespace softpulse
