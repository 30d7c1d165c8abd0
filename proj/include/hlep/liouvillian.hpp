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

#include "hlep/core.hpp"

namespace hlep {

/// 4x4 generator acting on LiouvilleVector components
/// (rho_uu, rho_ud, rho_du, rho_dd). Units of 1/time.
class Superoperator {
 public:
  Superoperator() : m_(Mat4::Zero()) {}
  explicit Superoperator(const Mat4& m) : m_(m) {}

  const Mat4& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }

  LiouvilleVector apply(const LiouvilleVector& v) const {
    return LiouvilleVector(m_ * v.data());
  }

 private:
  Mat4 m_;
};

/// H = (omega/2) (sin(theta) sigma_x + cos(theta) sigma_z).
Mat2 build_hamiltonian(const SystemParams& p);

/// H - i (gamma/2) L^dagger L with L = |down><up|, so L^dagger L = |up><up|.
Mat2 build_nhh(const SystemParams& p);

/// Jump operator |down><up|.
Mat2 jump_operator();

/// Matrix form of the hybrid-Liouvillian in the (uu, ud, du, dd) basis.
Superoperator build_hybrid_liouvillian(const SystemParams& p);

/// -i[H, rho] - (gamma/2){L^dagger L, rho} + q gamma L rho L^dagger, evaluated
/// with 2x2 operator products. Independent of build_hybrid_liouvillian.
Mat2 apply_generator(const SystemParams& p, const Mat2& rho);
Mat2 apply_generator(const SystemParams& p, const DensityMatrix& rho);

}  // namespace hlep
