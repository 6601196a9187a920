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

#include "softpulse/sim.hpp"

#include <algorithm>
#include <cmath>

namespace softpulse {

namespace {

constexpr int kResyncInterval = 64;

template <typename Scalar>
using Cx = std::complex<Scalar>;

// Diagonal of the internal Hamiltonian A = w1 Z1 + w2 Z2 + j Z1 Z2.
template <typename Scalar>
std::array<Scalar, 4> internal_energies(const SystemParams& p) {
  std::array<Scalar, 4> e{};
  for (int k = 0; k < 4; ++k) {
    const Scalar z1 = k < 2 ? 1 : -1;
    const Scalar z2 = k % 2 == 0 ? 1 : -1;
    e[k] = Scalar(p.omega1) * z1 + Scalar(p.omega2) * z2 + Scalar(p.j) * z1 * z2;
  }
  return e;
}

// Row-major 2x2 complex matrix.
template <typename Scalar>
struct Block {
  Cx<Scalar> m[4];
};

template <typename Scalar>
struct BlockRhs {
  Scalar e_lo, e_hi, g;

  // -(i/2) H W with H = [[e_lo, g conj(z)], [g z, e_hi]].
  Block<Scalar> operator()(const Cx<Scalar>& z, const Block<Scalar>& w) const {
    const Cx<Scalar> up = g * std::conj(z), down = g * z;
    const Cx<Scalar> minus_half_i(0, Scalar(-0.5));
    Block<Scalar> out;
    for (int c = 0; c < 2; ++c) {
      out.m[c] = minus_half_i * (e_lo * w.m[c] + up * w.m[2 + c]);
      out.m[2 + c] = minus_half_i * (down * w.m[c] + e_hi * w.m[2 + c]);
    }
    return out;
  }
};

template <typename Scalar>
Block<Scalar> axpy(const Block<Scalar>& w, Scalar h, const Block<Scalar>& k) {
  Block<Scalar> out;
  for (int i = 0; i < 4; ++i) out.m[i] = w.m[i] + h * k.m[i];
  return out;
}

template <typename Scalar>
Matrix2c<Scalar> to_matrix(const Block<Scalar>& b) {
  Matrix2c<Scalar> m;
  m << b.m[0], b.m[1], b.m[2], b.m[3];
  return m;
}

// Newton-Schulz iteration towards the unitary polar factor.
template <typename Scalar>
Matrix2c<Scalar> polar_unitary(Matrix2c<Scalar> x) {
  const Matrix2c<Scalar> id = Matrix2c<Scalar>::Identity();
  for (int it = 0; it < 8; ++it) {
    const Matrix2c<Scalar> g = x.adjoint() * x;
    if ((g - id).norm() < 16 * std::numeric_limits<Scalar>::epsilon()) break;
    x = x * (Scalar(3) * id - g) / Scalar(2);
  }
  return x;
}

// Index pairs (driven spin up, driven spin down) of the two invariant blocks.
std::array<std::array<int, 2>, 2> block_indices(int spin) {
  if (spin == 1) return {{{0, 2}, {1, 3}}};
  return {{{0, 1}, {2, 3}}};
}

template <typename Scalar>
Matrix4c<Scalar> rotating_segment(Scalar a, Scalar b, Generator gen) {
  const Scalar l = std::hypot(a, b);
  if (l == 0) return Matrix4c<Scalar>::Identity();
  const Matrix4c<Scalar> h =
      a * generator_matrix<Scalar>(Generator::ZZ) + b * generator_matrix<Scalar>(gen);
  return std::cos(l) * Matrix4c<Scalar>::Identity() - Cx<Scalar>(0, std::sin(l) / l) * h;
}

Generator lab_generator(const LabSegment& s) {
  if (s.spin == 1) return s.phase == CarrierPhase::Zero ? Generator::X1 : Generator::Y1;
  return s.phase == CarrierPhase::Zero ? Generator::X2 : Generator::Y2;
}

}  // namespace

template <typename Scalar>
Matrix4c<Scalar> propagate_rotating_as(const RotSchedule& rs) {
  Matrix4c<Scalar> u = Matrix4c<Scalar>::Identity();
  for (const Segment& s : rs.segments) u = u * rotating_segment<Scalar>(s.a, s.b, s.gen);
  return u;
}

template <typename Scalar>
LabRun<Scalar> integrate_lab(const LabSchedule& ls, const SystemParams& p, double step) {
  double rate = std::max({std::abs(p.omega1), std::abs(p.omega2), p.j});
  for (const LabSegment& s : ls.segments) rate = std::max(rate, std::abs(s.amplitude));
  if (!(step > 0) || step > 0.05 / rate)
    throw StepTooLarge("integrator step exceeds 0.05 / max rate");

  const std::array<Scalar, 4> energy = internal_energies<Scalar>(p);
  const Cx<Scalar> minus_half_i(0, Scalar(-0.5));
  LabRun<Scalar> run;
  run.v = Matrix4c<Scalar>::Identity();
  Scalar t0 = 0;

  for (const LabSegment& s : ls.segments) {
    const Scalar tau = s.duration;
    if (s.amplitude == 0.0) {
      for (int k = 0; k < 4; ++k) run.v.row(k) *= std::exp(minus_half_i * energy[k] * tau);
      t0 += tau;
      continue;
    }

    const auto n = static_cast<std::size_t>(std::ceil(s.duration / step));
    const Scalar h = tau / Scalar(n);
    const Scalar omega = p.omega(s.spin);
    const Scalar phi = phase_value(s.phase);
    const Scalar g = Scalar(s.amplitude) * Scalar(p.coupling(s.spin));
    const Cx<Scalar> half_turn = std::polar(Scalar(1), omega * h / 2);
    const auto idx = block_indices(s.spin);

    std::array<BlockRhs<Scalar>, 2> rhs;
    std::array<Block<Scalar>, 2> w;
    for (int b = 0; b < 2; ++b) {
      rhs[b] = {energy[idx[b][0]], energy[idx[b][1]], g};
      w[b].m[0] = w[b].m[3] = 1;
      w[b].m[1] = w[b].m[2] = 0;
    }

    Cx<Scalar> z;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % kResyncInterval == 0) z = std::polar(Scalar(1), omega * (t0 + Scalar(i) * h) + phi);
      const Cx<Scalar> z_mid = z * half_turn;
      const Cx<Scalar> z_end = z_mid * half_turn;
      for (int b = 0; b < 2; ++b) {
        const Block<Scalar> k1 = rhs[b](z, w[b]);
        const Block<Scalar> k2 = rhs[b](z_mid, axpy(w[b], h / 2, k1));
        const Block<Scalar> k3 = rhs[b](z_mid, axpy(w[b], h / 2, k2));
        const Block<Scalar> k4 = rhs[b](z_end, axpy(w[b], h, k3));
        for (int e = 0; e < 4; ++e)
          w[b].m[e] += h / 6 * (k1.m[e] + Scalar(2) * (k2.m[e] + k3.m[e]) + k4.m[e]);
      }
      z = z_end;
    }
    run.steps += n;

    Matrix4c<Scalar> full = Matrix4c<Scalar>::Zero();
    for (int b = 0; b < 2; ++b) {
      const Matrix2c<Scalar> raw = to_matrix(w[b]);
      const Matrix2c<Scalar> proj = polar_unitary(raw);
      run.max_defect = std::max(
          run.max_defect,
          static_cast<double>((raw.adjoint() * raw - Matrix2c<Scalar>::Identity()).norm()));
      run.max_correction = std::max(run.max_correction, static_cast<double>((proj - raw).norm()));
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) full(idx[b][r], idx[b][c]) = proj(r, c);
    }
    run.v = full * run.v;
    t0 += tau;
  }
  run.total_time = t0;
  return run;
}

SU4Matrix propagate_lab(const LabSchedule& ls, const SystemParams& p, double step) {
  return integrate_lab<long double>(ls, p, step).v.cast<std::complex<double>>();
}

template <typename Scalar>
Matrix4c<Scalar> lab_reference(const LabSchedule& ls, const SystemParams& p) {
  Matrix4c<Scalar> u = Matrix4c<Scalar>::Identity();
  Scalar total = 0;
  for (const LabSegment& s : ls.segments) {
    const Scalar tau = s.duration;
    const Scalar a = Scalar(p.j) * tau / 2;
    const Scalar b = Scalar(s.amplitude) * Scalar(p.coupling(s.spin)) * tau / 2;
    u = rotating_segment<Scalar>(a, b, lab_generator(s)) * u;
    total += tau;
  }
  for (int k = 0; k < 4; ++k) {
    const Scalar z1 = k < 2 ? 1 : -1;
    const Scalar z2 = k % 2 == 0 ? 1 : -1;
    const Scalar angle = -total / 2 * (Scalar(p.omega1) * z1 + Scalar(p.omega2) * z2);
    u.row(k) *= std::polar(Scalar(1), angle);
  }
  return u;
}

VerificationReport verify(const SU4Matrix& target, const RotSchedule& rs, const LabSchedule& ls,
                          const SystemParams& p, double step, double removed_global_phase) {
  VerificationReport r;
  r.rot_error = frob_dist(propagate_rotating(rs), target);
  const LabRun<long double> run = integrate_lab<long double>(ls, p, step);
  const double total = static_cast<double>(run.total_time);
  r.lab_error = frob_dist(run.v.cast<std::complex<double>>().eval(), lab_target(target, total, p));
  r.constraints = check_constraints(rs);
  r.segment_count = rs.segments.size();
  r.total_time = total;
  r.removed_global_phase = removed_global_phase;
  r.max_defect = run.max_defect;
  r.max_correction = run.max_correction;
  return r;
}

template Matrix4c<double> propagate_rotating_as<double>(const RotSchedule&);
template Matrix4c<long double> propagate_rotating_as<long double>(const RotSchedule&);
template LabRun<double> integrate_lab<double>(const LabSchedule&, const SystemParams&, double);
template LabRun<long double> integrate_lab<long double>(const LabSchedule&, const SystemParams&,
                                                        double);
template Matrix4c<double> lab_reference<double>(const LabSchedule&, const SystemParams&);
template Matrix4c<long double> lab_reference<long double>(const LabSchedule&,
                                                          const SystemParams&);

}  // namespace softpulse
