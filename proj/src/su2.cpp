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

#include "softpulse/su2.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace softpulse {

namespace {

constexpr double kTiny = 1e-14;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

double wrap_two_pi(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

SU2Matrix cayley_klein_matrix(const CayleyKlein& p) {
  SU2Matrix s;
  const double c = std::cos(p.alpha), sn = std::sin(p.alpha);
  s(0, 0) = std::polar(c, p.zeta);
  s(0, 1) = std::polar(sn, p.mu);
  s(1, 0) = std::polar(sn, kPi - p.mu);
  s(1, 1) = std::polar(c, -p.zeta);
  return s;
}

CayleyKlein to_cayley_klein(const SU2Matrix& s) {
  const std::complex<double> a = s(0, 0), b = s(0, 1);
  CayleyKlein p;
  p.alpha = std::atan2(std::abs(b), std::abs(a));
  p.zeta = std::abs(a) > kTiny ? wrap_two_pi(std::arg(a)) : 0.0;
  p.mu = std::abs(b) > kTiny ? wrap_two_pi(std::arg(b)) : 0.0;
  return p;
}

SU2Matrix euler_xyx_matrix(const EulerXYX& angles) {
  return su2_exp(pauli_x(), angles.d) * su2_exp(pauli_y(), angles.e) *
         su2_exp(pauli_x(), angles.f);
}

EulerXYX euler_xyx(const CayleyKlein& p) {
  const SU2Matrix target = cayley_klein_matrix(p);
  const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
  const double cz = std::cos(p.zeta), sz = std::sin(p.zeta);
  const double cm = std::cos(p.mu), sm = std::sin(p.mu);

  // cos E and sin E up to the sign of sin E.
  const double cos_e = std::sqrt(cz * cz * ca * ca + sm * sm * sa * sa);
  const double sin_e = std::sqrt(sz * sz * ca * ca + cm * cm * sa * sa);
  const double e0 = std::atan2(sin_e, cos_e);

  const double sin_diff = sin_e > kTiny ? clamp_unit(sz * ca / sin_e) : 0.0;
  const double sin_sum = cos_e > kTiny ? clamp_unit(sm * sa / cos_e) : 0.0;
  const double diff0 = std::asin(sin_diff), sum0 = std::asin(sin_sum);

  const std::array<double, 2> e_candidates = {e0, kTwoPi - e0};
  const std::array<double, 2> diff_candidates = {diff0, kPi - diff0};
  const std::array<double, 2> sum_candidates = {sum0, kPi - sum0};

  EulerXYX best;
  int best_sign = 1;
  double best_err = std::numeric_limits<double>::infinity();
  for (int ie = 0; ie < 2; ++ie)
    for (double diff : diff_candidates)
      for (double sum : sum_candidates) {
        const EulerXYX cand{(sum + diff) / 2, e_candidates[ie], (sum - diff) / 2};
        const double err = (euler_xyx_matrix(cand) - target).norm();
        if (err < best_err) {
          best_err = err;
          best = cand;
          best_sign = ie == 0 ? 1 : -1;
        }
      }

  if (best_err > 1e-14) {
    // Quadrant-exact polish on the selected branch. With a = s(0,0),
    // b = s(0,1): Re a = cE cos(D+F), Im b = cE sin(D+F),
    // Re b = sE cos(D-F), Im a = -sE sin(D-F).
    const std::complex<double> a = target(0, 0), b = target(0, 1);
    const double sgn = best_sign;
    const double sum = cos_e > kTiny ? std::atan2(b.imag(), a.real()) : 0.0;
    const double diff =
        sin_e > kTiny ? std::atan2(-sgn * a.imag(), sgn * b.real()) : 0.0;
    const EulerXYX polished{(sum + diff) / 2, best.e, (sum - diff) / 2};
    if ((euler_xyx_matrix(polished) - target).norm() < best_err) best = polished;
  }

  return {wrap_two_pi(best.d), wrap_two_pi(best.e), wrap_two_pi(best.f)};
}

SU2Matrix rotation_to_north(const C2Vector& v) {
  const double n = v.norm();
  if (n <= kTiny) throw ZeroVector("rotation_to_north: vector norm below 1e-14");
  SU2Matrix r;
  r << std::conj(v(0)), std::conj(v(1)), -v(1), v(0);
  return r / n;
}

SU2Matrix rotation_to_south(const C2Vector& v) {
  const double n = v.norm();
  if (n <= kTiny) throw ZeroVector("rotation_to_south: vector norm below 1e-14");
  SU2Matrix r;
  r << v(1), -v(0), std::conj(v(0)), std::conj(v(1));
  return r / n;
}

}  // namespace softpulse
