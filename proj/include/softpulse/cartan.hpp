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
#include <string>
#include <vector>

#include "softpulse/givens.hpp"

namespace softpulse {

/// Parameters of
///   S = (K1 (x) K2) e^{-i pi/4 Y1} e^{-i pi/4 Y2} e^{-i t1 ZZ}
///       e^{-i 7pi/4 Y1} e^{-i 7pi/4 Y2} e^{-i 7pi/4 X1} e^{-i 7pi/4 X2}
///       e^{-i t2 ZZ} e^{-i pi/4 X1} e^{-i pi/4 X2} e^{-i t3 ZZ} (K3 (x) K4)
/// with the Pauli generators taken without the spin-1/2 factor.
struct CartanParams {
  SU2Matrix k1 = SU2Matrix::Identity();
  SU2Matrix k2 = SU2Matrix::Identity();
  SU2Matrix k3 = SU2Matrix::Identity();
  SU2Matrix k4 = SU2Matrix::Identity();
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
};

/// P = (t1 - t2)/4, Q = t3/4, R = (t1 + t2)/4.
struct PQRParams {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
};

PQRParams to_pqr(const CartanParams& c);
/// Sets theta1 = 2(R + P), theta2 = 2(R - P), theta3 = 4Q.
void set_thetas(CartanParams& c, const PQRParams& pqr);

/// Evaluates the Cartan product factor by factor.
SU4Matrix reconstruct_cartan(const CartanParams& c);

/// Which path produced a parameter set.
enum class CartanRoute {
  Recipe,         // closed-form or root-finding recipe, first branch
  BranchSearch,   // recipe with shifted angles or flipped signs
  LeastSquares,   // Levenberg-Marquardt refinement over all fifteen parameters
};

struct CartanResult {
  CartanParams params;
  CartanRoute route = CartanRoute::Recipe;
  double residual = 0.0;  // ||reconstruct_cartan(params) - factor||_F
  bool fallback_used() const { return route == CartanRoute::LeastSquares; }
};

std::string_view to_string(CartanRoute route);

/// K1 = exp(i pi/2 sy), K2 = core, K3 = K4 = I, all thetas zero.
CartanResult cartan_for_kron(const GivensFactor& f);

struct AlphaQ {
  double alpha = 0.0;
  double q = 0.0;
};

struct AlphaQResiduals {
  double modulus = 0.0;  // sqrt(cos^2 8Q + cos^2 2a sin^2 8Q) - cos a5
  double phase = 0.0;    // cos 2a sin 8Q cos z5 - cos 8Q sin z5
};

/// Residuals of the conjugation equations for a block
/// K2 exp(8iQ sz) K2^H = S(a5, z5, .) with K2 = S(alpha, 0, mu). The phase
/// equation is tan z5 = cos 2a tan 8Q multiplied through by the cosines.
AlphaQResiduals alpha_q_residuals(const AlphaQ& root, double alpha5, double zeta5);

/// Solves the two transcendental equations for (alpha, Q), alpha in
/// [0, pi/2]. Q is first eliminated through the tangent equation and the
/// modulus equation is solved in alpha from a 64-point seed grid with Newton
/// polish; a 16x16 multistart two-dimensional Newton is the fallback. Throws
/// NoRoot if neither reaches residuals below 1e-11.
AlphaQ solve_alpha_q(double alpha5, double zeta5);

/// Factor S5 (Plane34) or S1/S3 (Plane12): K1 = K3 = I, K2 = S(alpha, 0, mu),
/// P = R = 0, theta3 = 4Q, K4 the inverse of the 2x2 block of the partial
/// product that must reduce to the identity.
CartanResult cartan_for_plane(const GivensFactor& f);

struct Eta {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
};

/// Solves eta1 + eta2 + eta3 = 0, eta1 - eta2 + eta3 = zeta2,
/// eta1 - eta2 - eta3 = mu2 + pi/2.
Eta solve_eta(double zeta2, double mu2);

/// Factor S2 (Plane23) or S4 (Plane14): K1 = e^{i eta1 sz}, K2 = e^{i eta2 sz},
/// K3 = I, K4 = e^{i eta3 sz}, Q = 0 and either P = 0 (Plane23) or R = 0
/// (Plane14), with the remaining PQR parameter a quarter of the block's
/// Cayley-Klein alpha.
CartanResult cartan_for_mixed(const GivensFactor& f);

/// Dispatches on the factor kind.
CartanResult cartan_for_factor(const GivensFactor& f);

/// Levenberg-Marquardt over the fifteen parameters, starting at `seed`.
/// Returns the best parameters found and their residual.
CartanResult refine_least_squares(const CartanParams& seed, const SU4Matrix& target);

/// Cartan parameters for every factor, in S1 ... S6 order.
std::vector<CartanResult> cartan_decompose(const GivensFactors& factors);

}  // namespace softpulse
