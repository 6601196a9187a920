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

#include <cstddef>

#include "softpulse/frame.hpp"

namespace softpulse {

/// Ordered product of closed-form segment propagators (product order).
template <typename Scalar = double>
Matrix4c<Scalar> propagate_rotating_as(const RotSchedule& rs);

inline SU4Matrix propagate_rotating(const RotSchedule& rs) {
  return propagate_rotating_as<double>(rs);
}

template <typename Scalar>
struct LabRun {
  Matrix4c<Scalar> v;
  Scalar total_time = 0;       // accumulated durations, the clock used by the carriers
  double max_defect = 0.0;     // largest per-segment ||W^H W - I||_F before projection
  double max_correction = 0.0; // largest per-segment ||W_proj - W||_F
  std::size_t steps = 0;
};

/// Integrates V' = -(i/2)(A + u1 B1 + u2 B2) V from V(0) = I with classical
/// fourth-order Runge-Kutta. Each pulse segment is split into
/// ceil(duration / step) equal steps; the undriven spin is conserved, so the
/// two invariant 2x2 blocks are stepped separately. Free-evolution segments
/// use the exact diagonal exponential. Every segment propagator is projected
/// back onto the unitary group. Throws StepTooLarge if
/// step > 0.05 / max(|omega1|, |omega2|, j, max |c|).
template <typename Scalar>
LabRun<Scalar> integrate_lab(const LabSchedule& ls, const SystemParams& p, double step);

/// integrate_lab in extended precision, rounded to double.
SU4Matrix propagate_lab(const LabSchedule& ls, const SystemParams& p, double step);

/// exp(-T F) times the rotating-frame product implied by the lab segments,
/// with T the accumulated duration, in the given precision.
template <typename Scalar>
Matrix4c<Scalar> lab_reference(const LabSchedule& ls, const SystemParams& p);

struct VerificationReport {
  double rot_error = 0.0;
  double lab_error = 0.0;
  ConstraintSummary constraints;
  std::size_t segment_count = 0;
  double total_time = 0.0;
  double removed_global_phase = 0.0;
  double max_defect = 0.0;
  double max_correction = 0.0;
};

/// rot_error = ||propagate_rotating(rs) - target||_F and
/// lab_error = ||V_lab(T) - lab_target(target, T, p)||_F.
VerificationReport verify(const SU4Matrix& target, const RotSchedule& rs, const LabSchedule& ls,
                          const SystemParams& p, double step, double removed_global_phase = 0.0);

}  // namespace softpulse
