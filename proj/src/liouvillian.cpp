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

#include "hlep/liouvillian.hpp"

namespace hlep {

namespace {

Mat2 sigma_x() {
  Mat2 s;
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

Mat2 sigma_z() {
  Mat2 s;
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

}  // namespace

Mat2 build_hamiltonian(const SystemParams& p) {
  return 0.5 * (p.omega_x() * sigma_x() + p.omega_z() * sigma_z());
}

Mat2 jump_operator() {
  Mat2 l;
  l << 0.0, 0.0, 1.0, 0.0;
  return l;
}

Mat2 build_nhh(const SystemParams& p) {
  const Mat2 l = jump_operator();
  return build_hamiltonian(p) - I * (0.5 * p.gamma()) * (l.adjoint() * l);
}

Superoperator build_hybrid_liouvillian(const SystemParams& p) {
  const double g = p.gamma();
  const double wx = p.omega_x();
  const double wz = p.omega_z();
  const cplx h = 0.5 * I * wx;
  Mat4 s;
  // clang-format off
  s << -g,      h,                   -h,                  0.0,
        h,      -0.5 * g - I * wz,   0.0,                 -h,
       -h,      0.0,                 -0.5 * g + I * wz,   h,
        g * p.q(), -h,               h,                   0.0;
  // clang-format on
  return Superoperator(s);
}

Mat2 apply_generator(const SystemParams& p, const Mat2& rho) {
  const Mat2 h = build_hamiltonian(p);
  const Mat2 l = jump_operator();
  const Mat2 ldl = l.adjoint() * l;
  return -I * (h * rho - rho * h) - 0.5 * p.gamma() * (ldl * rho + rho * ldl) +
         p.q() * p.gamma() * (l * rho * l.adjoint());
}

Mat2 apply_generator(const SystemParams& p, const DensityMatrix& rho) {
  return apply_generator(p, rho.matrix());
}

}  // namespace hlep
