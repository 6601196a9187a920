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

// Fixed-size complex matrices for one and two spins, the Pauli generator
// table and the matrix exponentials used throughout the compiler.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>
#include <string_view>

#include "softpulse/errors.hpp"

namespace softpulse {

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Matrix4c = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
template <typename Scalar>
using Vector2c = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

using SU2Matrix = Matrix2c<double>;
using SU4Matrix = Matrix4c<double>;
using C2Vector = Vector2c<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kSu2Tol = 1e-12;
inline constexpr double kSu4Tol = 1e-11;

template <typename Scalar = double>
Matrix2c<Scalar> pauli_x() {
  Matrix2c<Scalar> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Scalar = double>
Matrix2c<Scalar> pauli_y() {
  using C = std::complex<Scalar>;
  Matrix2c<Scalar> m;
  m << C(0), C(0, -1), C(0, 1), C(0);
  return m;
}

template <typename Scalar = double>
Matrix2c<Scalar> pauli_z() {
  Matrix2c<Scalar> m;
  m << 1, 0, 0, -1;
  return m;
}

/// Kronecker product; the first factor acts on spin 1 (the most significant
/// index), so basis order is |00>, |01>, |10>, |11>.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a,
          const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, 4, 4> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

// The five factor generators of the native word plus the four commutator
// directions -i*ZZ*G that host the middle factor of a one-spin rotation.
enum class Generator { ZZ, X1, Y1, X2, Y2, YZ, XZ, ZY, ZX };

inline constexpr std::array<Generator, 4> kOneSpinGenerators = {
    Generator::X1, Generator::Y1, Generator::X2, Generator::Y2};
inline constexpr std::array<Generator, 4> kCommutatorGenerators = {
    Generator::YZ, Generator::XZ, Generator::ZY, Generator::ZX};

constexpr bool is_one_spin(Generator g) {
  return g == Generator::X1 || g == Generator::Y1 || g == Generator::X2 ||
         g == Generator::Y2;
}

// Spin addressed by a one-spin generator (1 or 2).
constexpr int spin_of(Generator g) {
  return (g == Generator::X2 || g == Generator::Y2) ? 2 : 1;
}

constexpr std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::ZZ: return "ZZ";
    case Generator::X1: return "X1";
    case Generator::Y1: return "Y1";
    case Generator::X2: return "X2";
    case Generator::Y2: return "Y2";
    case Generator::YZ: return "YZ";
    case Generator::XZ: return "XZ";
    case Generator::ZY: return "ZY";
    case Generator::ZX: return "ZX";
  }
  return "?";
}

inline std::optional<Generator> generator_from_string(std::string_view s) {
  for (Generator g : {Generator::ZZ, Generator::X1, Generator::Y1, Generator::X2,
                      Generator::Y2, Generator::YZ, Generator::XZ, Generator::ZY,
                      Generator::ZX})
    if (to_string(g) == s) return g;
  return std::nullopt;
}

template <typename Scalar = double>
Matrix4c<Scalar> generator_matrix(Generator g) {
  const Matrix2c<Scalar> id = Matrix2c<Scalar>::Identity();
  const Matrix2c<Scalar> x = pauli_x<Scalar>(), y = pauli_y<Scalar>(),
                         z = pauli_z<Scalar>();
  switch (g) {
    case Generator::ZZ: return kron(z, z);
    case Generator::X1: return kron(x, id);
    case Generator::Y1: return kron(y, id);
    case Generator::X2: return kron(id, x);
    case Generator::Y2: return kron(id, y);
    case Generator::YZ: return kron(y, z);
    case Generator::XZ: return kron(x, z);
    case Generator::ZY: return kron(z, y);
    case Generator::ZX: return kron(z, x);
  }
  return Matrix4c<Scalar>::Zero();
}

/// exp(-i t G) for a table generator. Every G squares to the identity, so
/// this is cos(t) I - i sin(t) G.
template <typename Scalar = double>
Matrix4c<Scalar> generator_exp(Generator g, Scalar t) {
  using C = std::complex<Scalar>;
  return C(std::cos(t)) * Matrix4c<Scalar>::Identity() -
         C(0, std::sin(t)) * generator_matrix<Scalar>(g);
}

/// exp(i angle sigma) for a 2x2 Hermitian involution sigma.
template <typename Scalar = double>
Matrix2c<Scalar> su2_exp(const Matrix2c<Scalar>& sigma, Scalar angle) {
  using C = std::complex<Scalar>;
  return C(std::cos(angle)) * Matrix2c<Scalar>::Identity() +
         C(0, std::sin(angle)) * sigma;
}

template <typename Derived>
typename Derived::RealScalar hermiticity_error(const Eigen::MatrixBase<Derived>& h) {
  return (h - h.adjoint()).norm();
}

template <typename Derived>
typename Derived::RealScalar unitarity_error(const Eigen::MatrixBase<Derived>& u) {
  using M = Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime,
                          Derived::ColsAtCompileTime>;
  return (u.adjoint() * u - M::Identity()).norm();
}

template <typename Derived>
typename Derived::RealScalar determinant_error(const Eigen::MatrixBase<Derived>& u) {
  return std::abs(u.determinant() - typename Derived::Scalar(1));
}

template <typename Derived>
bool is_special_unitary(const Eigen::MatrixBase<Derived>& u, double tol) {
  return unitarity_error(u) < tol && determinant_error(u) < tol;
}

inline bool is_su2(const SU2Matrix& u) { return is_special_unitary(u, kSu2Tol); }
inline bool is_su4(const SU4Matrix& u) { return is_special_unitary(u, kSu4Tol); }

/// exp(-i t H) for Hermitian H via the eigendecomposition of H.
inline SU4Matrix expm_oracle(const SU4Matrix& h, double t) {
  if (hermiticity_error(h) > 1e-12)
    throw NonHermitian("expm_oracle: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<SU4Matrix> eig(h);
  const Eigen::Vector4d& w = eig.eigenvalues();
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k) phases(k) = std::polar(1.0, -t * w(k));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar frob_dist(const Eigen::MatrixBase<DerivedA>& u,
                                        const Eigen::MatrixBase<DerivedB>& v) {
  return (u - v).norm();
}

/// min over phi of ||u - e^{i phi} v||_F. The minimizer is phi = arg tr(v^H u).
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar phase_aligned_dist(const Eigen::MatrixBase<DerivedA>& u,
                                                 const Eigen::MatrixBase<DerivedB>& v) {
  using std::abs;
  const auto overlap = (v.adjoint() * u).trace();
  const auto d2 = u.squaredNorm() + v.squaredNorm() - 2 * abs(overlap);
  return std::sqrt(std::max(d2, typename DerivedA::RealScalar(0)));
}

/// Haar-distributed element of SU(N) from the QR factorization of a complex
/// Gaussian matrix, with the R diagonal phases folded back into Q.
template <int N, typename Rng>
Eigen::Matrix<std::complex<double>, N, N> random_special_unitary(Rng& rng) {
  using M = Eigen::Matrix<std::complex<double>, N, N>;
  std::normal_distribution<double> normal(0.0, 1.0);
  M z;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) z(i, j) = {normal(rng), normal(rng)};
  Eigen::HouseholderQR<M> qr(z);
  M q = qr.householderQ();
  M r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int k = 0; k < N; ++k) {
    const auto d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  const auto det = q.determinant();
  q *= std::polar(1.0, -std::arg(det) / N);
  return q;
}

}  // namespace softpulse
