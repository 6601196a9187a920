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

#include "softpulse/frame.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "softpulse/su2.hpp"

namespace softpulse {

namespace {

constexpr double kRootTol = 1e-9;

int generator_spin(Generator gen) { return is_one_spin(gen) ? spin_of(gen) : 1; }

CarrierPhase generator_phase(Generator gen) {
  return gen == Generator::Y1 || gen == Generator::Y2 ? CarrierPhase::HalfPi : CarrierPhase::Zero;
}

Generator segment_generator(int spin, CarrierPhase phase) {
  if (spin == 1) return phase == CarrierPhase::Zero ? Generator::X1 : Generator::Y1;
  return phase == CarrierPhase::Zero ? Generator::X2 : Generator::Y2;
}

// Bisects a sign change of f on [lo, hi] down to adjacent doubles.
double bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

// First point in [lo, hi] where f has a genuine root, scanning with `step`.
std::optional<FrameCorrection> scan_for_root(const std::function<double(double)>& f, double lo,
                                             double hi, double step) {
  double t = lo;
  double ft = f(t);
  if (std::abs(ft) < kRootTol) return FrameCorrection{t, ft};
  while (t < hi) {
    const double next = std::min(hi, t + step);
    const double fn = f(next);
    if (std::abs(fn) < kRootTol) return FrameCorrection{next, fn};
    if ((fn < 0) != (ft < 0)) {
      const double root = bisect(f, t, next, ft);
      const double r = f(root);
      if (std::abs(r) < kRootTol) return FrameCorrection{root, r};
    }
    t = next;
    ft = fn;
  }
  return std::nullopt;
}

double max_rate(const SystemParams& p) {
  return std::max({std::abs(p.omega1), std::abs(p.omega2), p.j});
}

double min_rate(const SystemParams& p) {
  return std::min({std::abs(p.omega1), std::abs(p.omega2), p.j});
}

}  // namespace

void SystemParams::validate() const {
  if (!(j > 0) || !std::isfinite(j)) throw InvalidParams("coupling j must be positive");
  if (!std::isfinite(omega1) || !std::isfinite(omega2))
    throw InvalidParams("Larmor frequencies must be finite");
  if (omega1 == omega2) throw InvalidParams("Larmor frequencies must differ");
  if (b1 == 0 || b2 == 0 || !std::isfinite(b1) || !std::isfinite(b2))
    throw InvalidParams("control couplings must be finite and nonzero");
  if (!(c_bound > 0) || !(d_bound > 0))
    throw InvalidBound("pulse-area and amplitude bounds must be positive");
}

double phase_value(CarrierPhase phase) { return phase == CarrierPhase::Zero ? 0.0 : kPi / 2; }

LabSegment to_lab_segment(const Segment& s, const SystemParams& p, double t_start) {
  LabSegment out;
  out.t_start = t_start;
  out.duration = 2 * s.a / p.j;
  out.spin = generator_spin(s.gen);
  out.phase = generator_phase(s.gen);
  out.amplitude = s.b == 0.0 ? 0.0 : (p.j / p.coupling(out.spin)) * (s.b / s.a);
  return out;
}

Segment to_rot_segment(const LabSegment& s, const SystemParams& p) {
  Segment out;
  out.gen = segment_generator(s.spin, s.phase);
  out.a = p.j * s.duration / 2;
  out.b = s.amplitude * p.coupling(s.spin) * s.duration / 2;
  return out;
}

LabSchedule to_lab_schedule(const RotSchedule& rs, const SystemParams& p) {
  LabSchedule out;
  out.frame = {p.omega1, p.omega2, p.j};
  out.segments.reserve(rs.segments.size());
  double t = 0.0;
  for (auto it = rs.segments.rbegin(); it != rs.segments.rend(); ++it) {
    out.segments.push_back(to_lab_segment(*it, p, t));
    t += out.segments.back().duration;
  }
  out.total_time = t;
  return out;
}

RotSchedule to_rot_schedule(const LabSchedule& ls, const SystemParams& p) {
  RotSchedule out;
  out.c_bound = p.c_bound;
  out.d_bound = p.d_bound;
  out.segments.reserve(ls.segments.size());
  for (auto it = ls.segments.rbegin(); it != ls.segments.rend(); ++it)
    out.segments.push_back(to_rot_segment(*it, p));
  return out;
}

SU4Matrix frame_generator(const SystemParams& p) {
  const std::complex<double> half_i(0, 0.5);
  return half_i * (p.omega1 * kron(pauli_z(), Matrix2c<double>::Identity()) +
                   p.omega2 * kron(Matrix2c<double>::Identity(), pauli_z()));
}

SU4Matrix frame_exp(const SystemParams& p, double t) {
  SU4Matrix out = SU4Matrix::Zero();
  for (int k = 0; k < 4; ++k) {
    const double z1 = k < 2 ? 1.0 : -1.0;
    const double z2 = k % 2 == 0 ? 1.0 : -1.0;
    out(k, k) = std::polar(1.0, 0.5 * t * (p.omega1 * z1 + p.omega2 * z2));
  }
  return out;
}

SU4Matrix lab_target(const SU4Matrix& s_rot, double total_time, const SystemParams& p) {
  return frame_exp(p, -total_time) * s_rot;
}

FrameCorrection frame_correction_time(double total_time, const SystemParams& p,
                                      const std::function<double(double)>& time_of) {
  const auto residual = [&](double t0) { return t0 - time_of(t0) - total_time; };
  const double step = kTwoPi / (16 * max_rate(p));
  const double hi = total_time + 1e4 * kTwoPi / min_rate(p);
  if (auto root = scan_for_root(residual, total_time, hi, step)) return *root;
  throw NoBracket("no frame-correction root on the search interval");
}

FactorWord frame_word(double t0, const SystemParams& p) {
  FactorWord word;
  for (int spin : {1, 2}) {
    const Generator x = spin == 1 ? Generator::X1 : Generator::X2;
    const Generator y = spin == 1 ? Generator::Y1 : Generator::Y2;
    word.push_back({y, 7 * kPi / 4});
    word.push_back({x, wrap_two_pi(-0.5 * t0 * p.omega(spin))});
    word.push_back({y, kPi / 4});
  }
  return word;
}

RotSchedule frame_schedule(double t0, const SystemParams& p) {
  const int chunks = std::max(3, split_chunk_count(kPi, p.c_bound, p.d_bound));
  RotSchedule out;
  out.c_bound = p.c_bound;
  out.d_bound = p.d_bound;
  for (const WordFactor& f : frame_word(t0, p)) {
    const double angle = f.t > kPi ? f.t - kTwoPi : f.t;
    const bool quarter = f.gen == Generator::Y1 || f.gen == Generator::Y2;
    const RotSchedule part =
        compile_rotation(angle, f.gen, p.c_bound, p.d_bound, quarter ? 1 : chunks);
    out.segments.insert(out.segments.end(), part.segments.begin(), part.segments.end());
  }
  return out;
}

double frame_preparation_time(double t0, const SystemParams& p) {
  double area = 0.0;
  for (const Segment& s : frame_schedule(t0, p).segments) area += s.a;
  return 2 * area / p.j;
}

double preset_residual(double t0, double total_time, const SystemParams& p) {
  const double k = (10.5 + 1 / std::sqrt(2.0)) * kPi;
  return t0 - (kPi / p.j) * (std::cos(p.omega1 * t0) + std::cos(p.omega2 * t0)) -
         (k + total_time) / p.j;
}

FrameCorrection preset_frame_correction(double total_time, const SystemParams& p) {
  // The cosine term is bounded by 2 pi / J, which brackets every root.
  const double centre = ((10.5 + 1 / std::sqrt(2.0)) * kPi + total_time) / p.j;
  const double lo = std::max(0.0, centre - kTwoPi / p.j);
  const double hi = centre + kTwoPi / p.j;
  const auto residual = [&](double t0) { return preset_residual(t0, total_time, p); };
  if (auto root = scan_for_root(residual, lo, hi, kTwoPi / (16 * max_rate(p)))) return *root;
  throw NoBracket("no root of the preset frame-correction equation");
}

}  // namespace softpulse
