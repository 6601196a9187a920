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

#include "softpulse/cartan.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <random>

#include "softpulse/su2.hpp"

namespace softpulse {

namespace {

constexpr double kAcceptTol = 1e-10;
constexpr double kRootTol = 1e-11;

SU2Matrix exp_i_sz(double eta) { return su2_exp(pauli_z(), eta); }

// exp(i (x sx + y sy + z sz)).
SU2Matrix su2_exp_vector(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (n == 0.0) return SU2Matrix::Identity();
  const SU2Matrix h = (x * pauli_x() + y * pauli_y() + z * pauli_z()) / n;
  return std::cos(n) * SU2Matrix::Identity() + std::complex<double>(0, std::sin(n)) * h;
}

double residual_of(const CartanParams& c, const SU4Matrix& target) {
  return (reconstruct_cartan(c) - target).norm();
}

AlphaQResiduals residuals_at(double alpha, double w, double alpha5, double zeta5) {
  const double c2a = std::cos(2 * alpha);
  const double cw = std::cos(w), sw = std::sin(w);
  return {std::sqrt(cw * cw + c2a * c2a * sw * sw) - std::cos(alpha5),
          c2a * sw * std::cos(zeta5) - cw * std::sin(zeta5)};
}

bool is_root(const AlphaQResiduals& r) {
  return std::abs(r.modulus) < kRootTol && std::abs(r.phase) < kRootTol;
}

// 8Q as a function of alpha after eliminating Q with the tangent equation.
double eliminated_w(double alpha, double zeta5) {
  return std::atan(std::sin(zeta5) / (std::cos(2 * alpha) * std::cos(zeta5)));
}

std::optional<AlphaQ> solve_reduced(double alpha5, double zeta5) {
  constexpr int kSeeds = 64;
  const auto h = [&](double a) {
    return residuals_at(a, eliminated_w(a, zeta5), alpha5, zeta5).modulus;
  };
  const auto accept = [&](double a) -> std::optional<AlphaQ> {
    const double w = eliminated_w(a, zeta5);
    if (std::isfinite(w) && is_root(residuals_at(a, w, alpha5, zeta5)))
      return AlphaQ{a, w / 8};
    return std::nullopt;
  };

  std::array<double, kSeeds> seeds{}, values{};
  for (int k = 0; k < kSeeds; ++k) {
    seeds[k] = (kPi / 2) * k / (kSeeds - 1);
    values[k] = h(seeds[k]);
    if (auto r = accept(seeds[k])) return r;
  }

  // Newton from every seed; the derivative is a central difference.
  for (double a0 : seeds) {
    double a = a0;
    for (int it = 0; it < 50; ++it) {
      const double step = 1e-7;
      const double lo = std::max(0.0, a - step), hi = std::min(kPi / 2, a + step);
      const double slope = (h(hi) - h(lo)) / (hi - lo);
      if (!std::isfinite(slope) || slope == 0.0) break;
      const double next = std::clamp(a - h(a) / slope, 0.0, kPi / 2);
      if (std::abs(next - a) < 1e-16) break;
      a = next;
    }
    if (auto r = accept(a)) return r;
  }

  // Sign changes on the seed grid, refined by bisection.
  for (int k = 0; k + 1 < kSeeds; ++k) {
    if (!(values[k] * values[k + 1] < 0)) continue;
    double lo = seeds[k], hi = seeds[k + 1], flo = values[k];
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
      const double mid = 0.5 * (lo + hi), fm = h(mid);
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    if (auto r = accept(0.5 * (lo + hi))) return r;
  }
  return std::nullopt;
}

std::optional<AlphaQ> solve_two_dimensional(double alpha5, double zeta5) {
  constexpr int kGrid = 16;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      double a = (kPi / 2) * (i + 0.5) / kGrid;
      double w = -kPi + kTwoPi * (j + 0.5) / kGrid;
      for (int it = 0; it < 60; ++it) {
        const AlphaQResiduals r = residuals_at(a, w, alpha5, zeta5);
        if (is_root(r)) break;
        const double step = 1e-7;
        const AlphaQResiduals ra = residuals_at(a + step, w, alpha5, zeta5);
        const AlphaQResiduals rw = residuals_at(a, w + step, alpha5, zeta5);
        Eigen::Matrix2d jac;
        jac << (ra.modulus - r.modulus) / step, (rw.modulus - r.modulus) / step,
            (ra.phase - r.phase) / step, (rw.phase - r.phase) / step;
        const Eigen::Vector2d f(r.modulus, r.phase);
        const Eigen::Vector2d delta = jac.completeOrthogonalDecomposition().solve(-f);
        if (!delta.allFinite()) break;
        // Backtracking keeps the step from overshooting the residual norm.
        double t = 1.0;
        for (int bt = 0; bt < 30; ++bt, t *= 0.5) {
          const AlphaQResiduals trial =
              residuals_at(a + t * delta(0), w + t * delta(1), alpha5, zeta5);
          if (std::hypot(trial.modulus, trial.phase) < f.norm()) break;
        }
        a += t * delta(0);
        w += t * delta(1);
      }
      if (is_root(residuals_at(a, w, alpha5, zeta5))) {
        // Fold alpha back into [0, pi/2]; cos 2a is invariant under a -> -a
        // and a -> pi - a.
        a = std::fmod(std::abs(a), kPi);
        if (a > kPi / 2) a = kPi - a;
        return AlphaQ{a, w / 8};
      }
    }
  return std::nullopt;
}

CartanResult finish(CartanParams params, CartanRoute route, const SU4Matrix& target) {
  CartanResult out{std::move(params), route, 0.0};
  out.residual = residual_of(out.params, target);
  return out;
}

}  // namespace

std::string_view to_string(CartanRoute route) {
  switch (route) {
    case CartanRoute::Recipe: return "recipe";
    case CartanRoute::BranchSearch: return "branch-search";
    case CartanRoute::LeastSquares: return "least-squares";
  }
  return "?";
}

PQRParams to_pqr(const CartanParams& c) {
  return {(c.theta1 - c.theta2) / 4, c.theta3 / 4, (c.theta1 + c.theta2) / 4};
}

void set_thetas(CartanParams& c, const PQRParams& pqr) {
  c.theta1 = 2 * (pqr.r + pqr.p);
  c.theta2 = 2 * (pqr.r - pqr.p);
  c.theta3 = 4 * pqr.q;
}

SU4Matrix reconstruct_cartan(const CartanParams& c) {
  using G = Generator;
  constexpr double q = kPi / 4, q7 = 7 * kPi / 4;
  SU4Matrix m = kron(c.k1, c.k2);
  m = m * generator_exp(G::Y1, q) * generator_exp(G::Y2, q);
  m = m * generator_exp(G::ZZ, c.theta1);
  m = m * generator_exp(G::Y1, q7) * generator_exp(G::Y2, q7);
  m = m * generator_exp(G::X1, q7) * generator_exp(G::X2, q7);
  m = m * generator_exp(G::ZZ, c.theta2);
  m = m * generator_exp(G::X1, q) * generator_exp(G::X2, q);
  m = m * generator_exp(G::ZZ, c.theta3);
  return m * kron(c.k3, c.k4);
}

CartanResult cartan_for_kron(const GivensFactor& f) {
  CartanParams c;
  c.k1 = kron_left_factor();
  c.k2 = f.core;
  return finish(c, CartanRoute::Recipe, materialize(f));
}

AlphaQResiduals alpha_q_residuals(const AlphaQ& root, double alpha5, double zeta5) {
  return residuals_at(root.alpha, 8 * root.q, alpha5, zeta5);
}

AlphaQ solve_alpha_q(double alpha5, double zeta5) {
  if (auto r = solve_reduced(alpha5, zeta5)) return *r;
  if (auto r = solve_two_dimensional(alpha5, zeta5)) return *r;
  throw NoRoot("solve_alpha_q: multistart search exhausted");
}

CartanResult cartan_for_plane(const GivensFactor& f) {
  if (f.kind != GivensKind::Plane34 && f.kind != GivensKind::Plane12)
    throw Error("cartan_for_plane: factor must be PLANE34 or PLANE12");
  const bool lower = f.kind == GivensKind::Plane34;
  const SU4Matrix target = materialize(f);
  const CayleyKlein ck = to_cayley_klein(f.core);

  // For PLANE12 the free block sits on top and carries the conjugate phase.
  const double zeta_eff = lower ? ck.zeta : wrap_two_pi(-ck.zeta);

  const auto build = [&](double alpha, double mu, double q) {
    CartanParams c;
    c.k2 = cayley_klein_matrix({alpha, 0.0, mu});
    set_thetas(c, {0.0, q, 0.0});
    const SU4Matrix partial = reconstruct_cartan(c);
    const SU2Matrix block =
        lower ? SU2Matrix(partial.topLeftCorner<2, 2>()) : SU2Matrix(partial.bottomRightCorner<2, 2>());
    c.k4 = block.inverse();
    return c;
  };

  CartanParams best = build(0.0, 0.0, 0.0);
  double best_err = residual_of(best, target);
  try {
    const AlphaQ root = solve_alpha_q(ck.alpha, zeta_eff);
    bool first = true;
    for (double dq : {0.0, kPi / 8})
      for (double alpha : {root.alpha, kPi / 2 - root.alpha})
        for (double mu : {ck.mu + kPi / 2, ck.mu - kPi / 2}) {
          const CartanParams c = build(alpha, wrap_two_pi(mu), root.q + dq);
          const double err = residual_of(c, target);
          if (err < kAcceptTol)
            return finish(c, first ? CartanRoute::Recipe : CartanRoute::BranchSearch, target);
          if (err < best_err) {
            best = c;
            best_err = err;
          }
          first = false;
        }
  } catch (const NoRoot&) {
    // Fall through to least squares from the best seed so far.
  }
  return refine_least_squares(best, target);
}

Eta solve_eta(double zeta2, double mu2) {
  Eta e;
  e.eta2 = -zeta2 / 2;
  e.eta3 = (zeta2 - mu2 - kPi / 2) / 2;
  e.eta1 = -e.eta2 - e.eta3;
  return e;
}

CartanResult cartan_for_mixed(const GivensFactor& f) {
  if (f.kind != GivensKind::Plane23 && f.kind != GivensKind::Plane14)
    throw Error("cartan_for_mixed: factor must be PLANE23 or PLANE14");
  const bool middle = f.kind == GivensKind::Plane23;
  const SU4Matrix target = materialize(f);
  const CayleyKlein ck = to_cayley_klein(f.core);

  // The printed linear system first, then the same system with the roles of
  // zeta and mu + pi/2 exchanged; each under all eta sign flips and both
  // signs of the rotation angle.
  const std::array<Eta, 2> bases = {solve_eta(ck.zeta, ck.mu),
                                    solve_eta(ck.mu + kPi / 2, ck.zeta - kPi / 2)};
  CartanParams best;
  double best_err = std::numeric_limits<double>::infinity();
  bool first = true;
  for (const Eta& base : bases)
    for (int angle_sign : {1, -1})
      for (int mask = 0; mask < 8; ++mask) {
        const double s1 = (mask & 1) ? -1 : 1, s2 = (mask & 2) ? -1 : 1,
                     s3 = (mask & 4) ? -1 : 1;
        CartanParams c;
        c.k1 = exp_i_sz(s1 * base.eta1);
        c.k2 = exp_i_sz(s2 * base.eta2);
        c.k4 = exp_i_sz(s3 * base.eta3);
        const double angle = angle_sign * ck.alpha / 4;
        set_thetas(c, middle ? PQRParams{0.0, 0.0, angle} : PQRParams{angle, 0.0, 0.0});
        const double err = residual_of(c, target);
        if (err < kAcceptTol)
          return finish(c, first ? CartanRoute::Recipe : CartanRoute::BranchSearch, target);
        if (err < best_err) {
          best = c;
          best_err = err;
        }
        first = false;
      }
  return refine_least_squares(best, target);
}

CartanResult cartan_for_factor(const GivensFactor& f) {
  switch (f.kind) {
    case GivensKind::Kron: return cartan_for_kron(f);
    case GivensKind::Plane34:
    case GivensKind::Plane12: return cartan_for_plane(f);
    case GivensKind::Plane23:
    case GivensKind::Plane14: return cartan_for_mixed(f);
  }
  throw Error("cartan_for_factor: unknown factor kind");
}

std::vector<CartanResult> cartan_decompose(const GivensFactors& factors) {
  std::vector<CartanResult> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(cartan_for_factor(f));
  return out;
}

namespace {

using Params15 = Eigen::Matrix<double, 15, 1>;
using Residual32 = Eigen::Matrix<double, 32, 1>;

CartanParams perturb(const CartanParams& c, const Params15& x) {
  CartanParams out = c;
  out.k1 = c.k1 * su2_exp_vector(x(0), x(1), x(2));
  out.k2 = c.k2 * su2_exp_vector(x(3), x(4), x(5));
  out.k3 = c.k3 * su2_exp_vector(x(6), x(7), x(8));
  out.k4 = c.k4 * su2_exp_vector(x(9), x(10), x(11));
  out.theta1 += x(12);
  out.theta2 += x(13);
  out.theta3 += x(14);
  return out;
}

Residual32 residual_vector(const CartanParams& c, const SU4Matrix& target) {
  const SU4Matrix d = reconstruct_cartan(c) - target;
  Residual32 r;
  for (int k = 0; k < 16; ++k) {
    r(2 * k) = d(k / 4, k % 4).real();
    r(2 * k + 1) = d(k / 4, k % 4).imag();
  }
  return r;
}

CartanParams levenberg_marquardt(CartanParams c, const SU4Matrix& target) {
  Residual32 r = residual_vector(c, target);
  double lambda = 1e-3;
  for (int it = 0; it < 300 && r.norm() > 1e-14; ++it) {
    Eigen::Matrix<double, 32, 15> jac;
    for (int k = 0; k < 15; ++k) {
      Params15 dx = Params15::Zero();
      dx(k) = 1e-7;
      jac.col(k) = (residual_vector(perturb(c, dx), target) -
                    residual_vector(perturb(c, -dx), target)) / 2e-7;
    }
    const Eigen::Matrix<double, 15, 15> jtj = jac.transpose() * jac;
    const Params15 g = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 20; ++tries) {
      Eigen::Matrix<double, 15, 15> a = jtj;
      a.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const Params15 step = a.ldlt().solve(-g);
      const CartanParams trial = perturb(c, step);
      const Residual32 rt = residual_vector(trial, target);
      if (rt.norm() < r.norm()) {
        c = trial;
        r = rt;
        lambda = std::max(lambda / 3, 1e-12);
        improved = true;
        break;
      }
      lambda *= 4;
    }
    if (!improved) break;
  }
  return c;
}

}  // namespace

CartanResult refine_least_squares(const CartanParams& seed, const SU4Matrix& target) {
  CartanParams best = levenberg_marquardt(seed, target);
  double best_err = residual_of(best, target);
  std::mt19937_64 rng(0x5eedcafe);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int restart = 0; restart < 32 && best_err > 1e-12; ++restart) {
    Params15 x;
    for (int k = 0; k < 15; ++k) x(k) = angle(rng) * (restart < 8 ? 0.1 : 1.0);
    const CartanParams c = levenberg_marquardt(perturb(seed, x), target);
    const double err = residual_of(c, target);
    if (err < best_err) {
      best = c;
      best_err = err;
    }
  }
  return CartanResult{best, CartanRoute::LeastSquares, best_err};
}

}  // namespace softpulse
