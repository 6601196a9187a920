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

#include "softpulse/matcore.hpp"

namespace softpulse {

/// Polar form of an SU(2) matrix:
///   [[ e^{i zeta} cos(alpha),       e^{i mu} sin(alpha)   ],
///    [ e^{i(pi - mu)} sin(alpha),   e^{-i zeta} cos(alpha) ]]
/// with alpha in [0, pi/2] and zeta, mu in [0, 2 pi).
struct CayleyKlein {
  double alpha = 0.0;
  double zeta = 0.0;
  double mu = 0.0;
};

/// Angles of S = exp(i d sx) exp(i e sy) exp(i f sx), each in [0, 2 pi).
struct EulerXYX {
  double d = 0.0;
  double e = 0.0;
  double f = 0.0;
};

/// Reduces an angle to [0, 2 pi).
double wrap_two_pi(double angle);

SU2Matrix cayley_klein_matrix(const CayleyKlein& p);

/// When alpha is 0 mu is fixed to 0, and when alpha is pi/2 zeta is fixed to 0.
CayleyKlein to_cayley_klein(const SU2Matrix& s);

/// x-y-x Euler angles. Candidate angles come from the closed-form cosine and
/// sine relations; the (at most eight) branch combinations are scored by
/// reconstruction against the Cayley-Klein matrix and the winner is polished
/// with two-argument arctangents.
EulerXYX euler_xyx(const CayleyKlein& p);

SU2Matrix euler_xyx_matrix(const EulerXYX& angles);

/// The SU(2) matrix R with R v = (|v|, 0). Throws ZeroVector for |v| <= 1e-14.
SU2Matrix rotation_to_north(const C2Vector& v);

/// The SU(2) matrix R with R v = (0, |v|). Throws ZeroVector for |v| <= 1e-14.
SU2Matrix rotation_to_south(const C2Vector& v);

}  // namespace softpulse
