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

#include "softpulse/pulse.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "softpulse/su2.hpp"

namespace softpulse {

namespace {

constexpr double kDropTol = 1e-13;
// |cos L| below this is handled by the cos L = 0 branch.
constexpr double kCosZeroTol = 1e-12;
constexpr double kQuarterTurnMargin = 1e-6;
constexpr double kMaxChunks = 1e7;

void append_euler(FactorWord& word, const SU2Matrix& k, int spin) {
  const EulerXYX e = euler_xyx(to_cayley_klein(k));
  const Generator gx = spin == 1 ? Generator::X1 : Generator::X2;
  const Generator gy = spin == 1 ? Generator::Y1 : Generator::Y2;
  word.push_back({gx, wrap_two_pi(kTwoPi - e.d)});
  word.push_back({gy, wrap_two_pi(kTwoPi - e.e)});
  word.push_back({gx, wrap_two_pi(kTwoPi - e.f)});
}

void append_free(FactorWord& word, double theta) {
  const double t = (theta > -kTwoPi && theta < kTwoPi) ? free_time(theta) : wrap_two_pi(theta);
  word.push_back({Generator::ZZ, wrap_two_pi(t)});
}

// -i ZZ G, the commutator direction paired with a one-spin generator G.
SU4Matrix commutator_direction(Generator gen) {
  return std::complex<double>(0, -1) * generator_matrix(Generator::ZZ) * generator_matrix(gen);
}

struct IdentityEntry {
  ConjugationIdentity identity;
  // The two-segment middle construction yields exp(-i x M) for M = -i ZZ G;
  // the requested middle factor is exp(-i L * kappa * M).
  int kappa = 1;
};

std::map<Generator, IdentityEntry> build_identity_table() {
  constexpr std::array<double, 4> drifts = {7 * kPi / 4, 5 * kPi / 4, 3 * kPi / 4, kPi / 4};
  constexpr std::array<double, 8> samples = {0.3, -1.1, 2.0, 0.77, -2.9, 1.57, 3.5, -0.05};
  std::map<Generator, IdentityEntry> table;
  for (Generator gen : kOneSpinGenerators) {
    bool found = false;
    for (int sign : {1, -1}) {
      for (double pre : drifts) {
        for (double post : drifts) {
          for (Generator mid : kCommutatorGenerators) {
            bool holds = true;
            for (double l : samples) {
              const SU4Matrix lhs = expm_oracle(generator_matrix(gen), l);
              const SU4Matrix rhs = expm_oracle(generator_matrix(Generator::ZZ), pre) *
                                    expm_oracle(generator_matrix(mid), sign * l) *
                                    expm_oracle(generator_matrix(Generator::ZZ), post);
              if ((lhs - rhs).norm() > 1e-12) {
                holds = false;
                break;
              }
            }
            if (!holds) continue;
            const SU4Matrix m = commutator_direction(gen);
            const double overlap = (generator_matrix(mid).adjoint() * m).trace().real() / 4;
            const int kappa = sign * (overlap > 0 ? 1 : -1);
            table[gen] = {{pre, mid, post, sign}, kappa};
            found = true;
            break;
          }
          if (found) break;
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found)
      throw IdentityNotFound("conjugation identity not found for " +
                             std::string(to_string(gen)));
  }
  return table;
}

const IdentityEntry& identity_entry(Generator gen) {
  static const std::map<Generator, IdentityEntry> table = build_identity_table();
  if (!is_one_spin(gen))
    throw IdentityNotFound("conjugation identity requested for non one-spin generator " +
                           std::string(to_string(gen)));
  return table.at(gen);
}

// Two segments realizing exp(-i x M) with M = -i ZZ G.
void append_middle(std::vector<Segment>& out, double x, Generator gen) {
  const double c = std::cos(x), s = std::sin(x);
  constexpr double h = kPi / 2;
  if (c > kCosZeroTol) {
    out.push_back({3 * kPi / 2, 0.0, gen});
    out.push_back({h * c, -h * s, gen});
  } else if (c < -kCosZeroTol) {
    out.push_back({-h * c, -h * s, gen});
    out.push_back({h, 0.0, gen});
  } else {
    const double a = h / std::sqrt(2.0);
    if (s > 0) {
      out.push_back({a, -a, gen});
      out.push_back({a, a, gen});
    } else {
      out.push_back({a, a, gen});
      out.push_back({a, -a, gen});
    }
  }
}

// Largest |b| and |b/a| of the single-shot construction for angle x.
std::pair<double, double> single_shot_extremes(double x) {
  const double c = std::cos(x), s = std::sin(x);
  if (std::abs(c) <= kCosZeroTol) return {kPi / (2 * std::sqrt(2.0)), 1.0};
  return {kPi / 2 * std::abs(s), std::abs(s / c)};
}

void validate_bounds(double c_bound, double d_bound) {
  if (!(c_bound > 0) || !(d_bound > 0))
    throw InvalidBound("pulse-area and amplitude bounds must be positive");
}

}  // namespace

SU4Matrix word_product(std::span<const WordFactor> word) {
  SU4Matrix m = SU4Matrix::Identity();
  for (const auto& f : word) m = m * generator_exp(f.gen, f.t);
  return m;
}

double free_time(double theta) { return theta >= 0 ? theta : kTwoPi + theta; }

FactorWord word_from_cartan(std::span<const CartanParams> parts) {
  using G = Generator;
  constexpr double q = kPi / 4, q7 = 7 * kPi / 4;
  FactorWord raw;
  for (const CartanParams& c : parts) {
    append_euler(raw, c.k1, 1);
    append_euler(raw, c.k2, 2);
    raw.push_back({G::Y1, q});
    raw.push_back({G::Y2, q});
    append_free(raw, c.theta1);
    raw.push_back({G::Y1, q7});
    raw.push_back({G::Y2, q7});
    raw.push_back({G::X1, q7});
    raw.push_back({G::X2, q7});
    append_free(raw, c.theta2);
    raw.push_back({G::X1, q});
    raw.push_back({G::X2, q});
    append_free(raw, c.theta3);
    append_euler(raw, c.k3, 1);
    append_euler(raw, c.k4, 2);
  }
  FactorWord word;
  word.reserve(raw.size());
  for (const auto& f : raw)
    if (f.t >= kDropTol && f.t <= kTwoPi - kDropTol) word.push_back(f);
  return word;
}

FactorWord word_from_local(const SU2Matrix& k1, const SU2Matrix& k2) {
  FactorWord raw;
  append_euler(raw, k1, 1);
  append_euler(raw, k2, 2);
  FactorWord word;
  for (const auto& f : raw)
    if (f.t >= kDropTol && f.t <= kTwoPi - kDropTol) word.push_back(f);
  return word;
}

const ConjugationIdentity& conjugation_identity(Generator gen) {
  return identity_entry(gen).identity;
}

SU4Matrix segment_propagator(const Segment& s) {
  const double l = std::hypot(s.a, s.b);
  if (l == 0.0) return SU4Matrix::Identity();
  const SU4Matrix h = s.a * generator_matrix(Generator::ZZ) + s.b * generator_matrix(s.gen);
  return std::cos(l) * SU4Matrix::Identity() - std::complex<double>(0, std::sin(l) / l) * h;
}

int chunk_count(double angle, double c_bound, double d_bound) {
  validate_bounds(c_bound, d_bound);
  const double x = std::abs(angle);
  const auto [b, ratio] = single_shot_extremes(x);
  if (b <= c_bound && ratio <= d_bound) return 1;
  return split_chunk_count(x, c_bound, d_bound);
}

int split_chunk_count(double angle, double c_bound, double d_bound) {
  validate_bounds(c_bound, d_bound);
  const double x = std::abs(angle);
  const auto fits = [&](int r) {
    const double xk = x / r;
    return kPi / 2 * std::sin(xk) <= c_bound && std::tan(xk) <= d_bound &&
           xk < kPi / 2 - kQuarterTurnMargin;
  };
  const double limit = std::min({std::asin(std::min(1.0, 2 * c_bound / kPi)),
                                 std::atan(d_bound), kPi / 2 - kQuarterTurnMargin});
  const double needed = std::ceil(x / limit);
  if (!(needed <= kMaxChunks)) throw InvalidBound("bounds require too many chunks");
  int r = std::max(2, static_cast<int>(needed));
  while (!fits(r)) ++r;
  while (r > 2 && fits(r - 1)) --r;
  return r;
}

RotSchedule compile_rotation(double angle, Generator gen, double c_bound, double d_bound,
                             int min_chunks) {
  const IdentityEntry& entry = identity_entry(gen);
  const int r = std::max(chunk_count(angle, c_bound, d_bound), min_chunks);
  const double chunk = angle / r;
  RotSchedule out;
  out.c_bound = c_bound;
  out.d_bound = d_bound;
  out.segments.reserve(4 * r);
  for (int k = 0; k < r; ++k) {
    out.segments.push_back({entry.identity.pre_drift, 0.0, gen});
    append_middle(out.segments, entry.kappa * chunk, gen);
    out.segments.push_back({entry.identity.post_drift, 0.0, gen});
  }
  return out;
}

RotSchedule compile_word(std::span<const WordFactor> word, double c_bound, double d_bound) {
  validate_bounds(c_bound, d_bound);
  RotSchedule out;
  out.c_bound = c_bound;
  out.d_bound = d_bound;
  for (const auto& f : word) {
    if (f.gen == Generator::ZZ) {
      out.segments.push_back({free_time(f.t), 0.0, Generator::X1});
      continue;
    }
    const double angle = f.t > kPi ? f.t - kTwoPi : f.t;
    const RotSchedule part = compile_rotation(angle, f.gen, c_bound, d_bound);
    out.segments.insert(out.segments.end(), part.segments.begin(), part.segments.end());
  }
  return out;
}

ConstraintSummary check_constraints(const RotSchedule& rs) {
  ConstraintSummary s;
  s.segment_count = rs.segments.size();
  s.min_a = rs.segments.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const Segment& seg : rs.segments) {
    s.min_a = std::min(s.min_a, seg.a);
    s.max_abs_b = std::max(s.max_abs_b, std::abs(seg.b));
    s.drift_area += seg.a;
    if (!(seg.a > 0)) {
      s.o1 = false;
      continue;
    }
    s.max_ratio = std::max(s.max_ratio, std::abs(seg.b / seg.a));
  }
  s.o2 = s.max_abs_b <= rs.c_bound;
  s.amplitude = s.o1 && s.max_ratio <= rs.d_bound;
  return s;
}

}  // namespace softpulse
