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

#include "hlep/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hlep {

namespace {

void require_range(const char* name, double value, double lo, double hi,
                   const char* range) {
  if (!(value >= lo && value <= hi)) {
    std::ostringstream os;
    os << name << " = " << value << " is outside the valid range " << range;
    throw DomainError(os.str());
  }
}

}  // namespace

SystemParams::SystemParams(double omega, double theta, double gamma, double q)
    : omega_(omega), theta_(theta), gamma_(gamma), q_(q) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  require_range("omega", omega, 0.0, inf, "[0, inf)");
  require_range("theta", theta, 0.0, pi, "[0, pi]");
  require_range("gamma", gamma, 0.0, inf, "[0, inf)");
  require_range("q", q, 0.0, 1.0, "[0, 1]");
}

SystemParams SystemParams::from_alpha(double alpha, double theta, double q,
                                      double omega) {
  require_range("alpha", alpha, 0.0, std::numeric_limits<double>::infinity(),
                "[0, inf)");
  return SystemParams(omega, theta, 2.0 * omega * alpha, q);
}

double SystemParams::alpha() const {
  if (omega_ == 0.0) {
    throw DomainError("alpha = gamma / (2 omega) requires omega in (0, inf)");
  }
  return gamma_ / (2.0 * omega_);
}

double SystemParams::omega_x() const { return omega_ * std::sin(theta_); }
double SystemParams::omega_z() const { return omega_ * std::cos(theta_); }

DensityMatrix DensityMatrix::from_matrix(const Mat2& m) {
  DensityMatrix rho(m);
  if (rho.hermiticity_deviation() > hermiticity_tol) {
    throw DomainError("density matrix must be Hermitian (deviation " +
                      std::to_string(rho.hermiticity_deviation()) + ")");
  }
  if (rho.min_eigenvalue() < -positivity_tol) {
    throw DomainError(
        "density matrix must be positive semidefinite (min eigenvalue >= "
        "-1e-10)");
  }
  const double tr = rho.trace();
  if (!(tr > 0.0 && tr <= 1.0 + positivity_tol)) {
    throw DomainError("density matrix trace = " + std::to_string(tr) +
                      " is outside the valid range (0, 1]");
  }
  return rho;
}

double DensityMatrix::hermiticity_deviation() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  // Closed form for the Hermitian part [[a, b], [conj b, d]].
  const double a = m_(0, 0).real();
  const double d = m_(1, 1).real();
  const cplx b = 0.5 * (m_(0, 1) + std::conj(m_(1, 0)));
  const double half_gap = std::hypot(0.5 * (a - d), std::abs(b));
  return 0.5 * (a + d) - half_gap;
}

LiouvilleVector vectorize(const Mat2& m) {
  return LiouvilleVector(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
}

LiouvilleVector vectorize(const DensityMatrix& rho) {
  return vectorize(rho.matrix());
}

DensityMatrix devectorize(const LiouvilleVector& v) {
  Mat2 m;
  m << v[0], v[1], v[2], v[3];
  return DensityMatrix::unchecked(m);
}

Vec2 ket(BasisState s) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (s) {
    case BasisState::up:
      return Vec2(1.0, 0.0);
    case BasisState::down:
      return Vec2(0.0, 1.0);
    case BasisState::plus:
      return Vec2(r, r);
    case BasisState::minus:
      return Vec2(r, -r);
  }
  throw std::logic_error("unknown basis state");
}

DensityMatrix projector(BasisState s) {
  Mat2 p;
  switch (s) {
    case BasisState::up:
      p << 1.0, 0.0, 0.0, 0.0;
      break;
    case BasisState::down:
      p << 0.0, 0.0, 0.0, 1.0;
      break;
    case BasisState::plus:
      p << 0.5, 0.5, 0.5, 0.5;
      break;
    case BasisState::minus:
      p << 0.5, -0.5, -0.5, 0.5;
      break;
  }
  return DensityMatrix::unchecked(p);
}

DensityMatrix maximally_mixed() {
  return DensityMatrix::unchecked(0.5 * Mat2::Identity());
}

std::string to_string(BasisState s) {
  switch (s) {
    case BasisState::up:
      return "up";
    case BasisState::down:
      return "down";
    case BasisState::plus:
      return "plus";
    case BasisState::minus:
      return "minus";
  }
  return "?";
}

BasisState basis_state_from_string(const std::string& name) {
  if (name == "up") return BasisState::up;
  if (name == "down") return BasisState::down;
  if (name == "plus") return BasisState::plus;
  if (name == "minus") return BasisState::minus;
  throw DomainError("basis state '" + name +
                    "' is not one of up|down|plus|minus");
}

}  // namespace hlep
