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

#include <functional>
#include <vector>

#include "softpulse/pulse.hpp"

namespace softpulse {

/// Physical constants of the two-spin system, all in rad/s except the
/// dimensionless bounds.
struct SystemParams {
  double j = 1.0;
  double omega1 = 20.0;
  double omega2 = 30.0;
  double b1 = 1.0;
  double b2 = 1.0;
  double c_bound = 0.2;  // max |b| per rotating-frame segment
  double d_bound = 1.0;  // max |b / a| per rotating-frame segment

  /// Throws InvalidParams (or InvalidBound for the two bounds).
  void validate() const;
  double omega(int spin) const { return spin == 1 ? omega1 : omega2; }
  double coupling(int spin) const { return spin == 1 ? b1 : b2; }
};

enum class CarrierPhase { Zero, HalfPi };

double phase_value(CarrierPhase phase);

/// u1(t) = c cos(w t + phi), u2(t) = c sin(w t + phi) on one spin, with t the
/// global schedule time.
struct LabSegment {
  double t_start = 0.0;
  double duration = 0.0;
  double amplitude = 0.0;
  int spin = 1;
  CarrierPhase phase = CarrierPhase::Zero;
};

struct FrameInfo {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double j = 0.0;
};

struct LabSchedule {
  std::vector<LabSegment> segments;  // chronological
  double total_time = 0.0;
  FrameInfo frame;
};

/// tau = 2a / j, c = (j / b_spin)(b / a); drift segments get amplitude 0.
LabSegment to_lab_segment(const Segment& s, const SystemParams& p, double t_start);

/// Inverse of to_lab_segment: a = j tau / 2, b = c b_spin tau / 2.
Segment to_rot_segment(const LabSegment& s, const SystemParams& p);

/// Segments are laid out in reverse product order, since the leftmost
/// factor acts last.
LabSchedule to_lab_schedule(const RotSchedule& rs, const SystemParams& p);

/// Product-order schedule recovered from a lab schedule.
RotSchedule to_rot_schedule(const LabSchedule& ls, const SystemParams& p);

/// F = (i/2)(omega1 Z1 + omega2 Z2).
SU4Matrix frame_generator(const SystemParams& p);

/// exp(t F), evaluated as a diagonal.
SU4Matrix frame_exp(const SystemParams& p, double t);

/// exp(-T_S F) S.
SU4Matrix lab_target(const SU4Matrix& s_rot, double total_time, const SystemParams& p);

struct FrameCorrection {
  double t0 = 0.0;
  double residual = 0.0;
};

/// Finds T0 with time_of(T0) + T_S = T0 by scanning upward from T_S and
/// bisecting each sign change. Brackets that straddle a jump of time_of are
/// skipped. Throws NoBracket if nothing converges before
/// T_S + 1e4 * 2 pi / min(omega1, omega2, j).
FrameCorrection frame_correction_time(double total_time, const SystemParams& p,
                                      const std::function<double(double)>& time_of);

/// Word for exp(t0 F): on each spin exp(i w t0/2 sz) is written as
/// exp(-i 7pi/4 Y) exp(-i L X) exp(-i pi/4 Y) with L = -w t0/2.
FactorWord frame_word(double t0, const SystemParams& p);

/// Compiled frame_word. The X rotations always use the chunk count needed by
/// a half turn (and at least three), which makes the duration a continuous
/// function of t0.
RotSchedule frame_schedule(double t0, const SystemParams& p);

/// Lab duration of frame_schedule(t0, p).
double frame_preparation_time(double t0, const SystemParams& p);

/// T0 - (pi/J)(cos w1 T0 + cos w2 T0) - ((21/2 + 1/sqrt 2) pi + T_S) / J,
/// the closed-form residual for the fixed pulse counts of the reference
/// construction.
double preset_residual(double t0, double total_time, const SystemParams& p);

/// Root of preset_residual by the same scan-and-bisect search.
FrameCorrection preset_frame_correction(double total_time, const SystemParams& p);

}  // namespace softpulse
