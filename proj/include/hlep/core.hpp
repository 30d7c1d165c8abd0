// Copyright 2026 The hlep Authors
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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hlep {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Raised when a parameter lies outside its physical range. The message
/// always names the parameter and its valid range.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physical control parameters of the driven, relaxing qubit.
///
/// The relaxation rate is stored directly so that omega = 0 stays well
/// defined; the dimensionless ratio alpha = gamma / (2 omega) is derived.
class SystemParams {
 public:
  /// Throws DomainError unless omega >= 0, gamma >= 0, 0 <= q <= 1 and
  /// 0 <= theta <= pi.
  SystemParams(double omega, double theta, double gamma, double q);

  /// Builds parameters from the dimensionless ratio: gamma = 2 omega alpha.
  static SystemParams from_alpha(double alpha, double theta, double q,
                                 double omega = 1.0);

  double omega() const { return omega_; }
  double theta() const { return theta_; }
  double gamma() const { return gamma_; }
  double q() const { return q_; }

  /// gamma / (2 omega); throws DomainError when omega == 0.
  double alpha() const;

  double omega_x() const;
  double omega_z() const;

 private:
  double omega_;
  double theta_;
  double gamma_;
  double q_;
};

/// Components ordered (rho_uu, rho_ud, rho_du, rho_dd).
class LiouvilleVector {
 public:
  LiouvilleVector() : v_(Vec4::Zero()) {}
  explicit LiouvilleVector(const Vec4& v) : v_(v) {}
  LiouvilleVector(cplx uu, cplx ud, cplx du, cplx dd) { v_ << uu, ud, du, dd; }

  const Vec4& data() const { return v_; }
  cplx operator[](int i) const { return v_(i); }

  friend bool operator==(const LiouvilleVector& a, const LiouvilleVector& b) {
    return a.v_ == b.v_;
  }

 private:
  Vec4 v_;
};

/// 2x2 qubit density matrix in the {up, down} basis.
///
/// `from_matrix` enforces Hermiticity, positivity (minimum eigenvalue
/// >= -1e-10) and a trace in (0, 1]. `unchecked` wraps arbitrary numerical
/// output such as an integrator state; use `hermiticity_deviation` and
/// `min_eigenvalue` to inspect it.
class DensityMatrix {
 public:
  static constexpr double positivity_tol = 1e-10;
  static constexpr double hermiticity_tol = 1e-10;

  static DensityMatrix from_matrix(const Mat2& m);
  static DensityMatrix unchecked(const Mat2& m) { return DensityMatrix(m); }

  const Mat2& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }

  double trace() const { return m_.trace().real(); }
  /// max |rho - rho^dagger| entrywise.
  double hermiticity_deviation() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

  friend bool operator==(const DensityMatrix& a, const DensityMatrix& b) {
    return a.m_ == b.m_;
  }

 private:
  explicit DensityMatrix(const Mat2& m) : m_(m) {}
  Mat2 m_;
};

LiouvilleVector vectorize(const DensityMatrix& rho);
LiouvilleVector vectorize(const Mat2& m);

/// Places the four components into a 2x2 matrix without validation;
/// numerical states may be slightly non-Hermitian.
DensityMatrix devectorize(const LiouvilleVector& v);

enum class BasisState { up, down, plus, minus };

Vec2 ket(BasisState s);
DensityMatrix projector(BasisState s);
/// (|+><+| + |-><-|) / 2, i.e. identity / 2.
DensityMatrix maximally_mixed();

std::string to_string(BasisState s);
BasisState basis_state_from_string(const std::string& name);

}  // namespace hlep
