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

#include <array>
#include <string>
#include <vector>

#include "hlep/core.hpp"
#include "hlep/liouvillian.hpp"

namespace hlep {

/// Coefficients of the monic quartic det(lambda I - S) in ascending order:
/// c[0] + c[1] lambda + ... + c[4] lambda^4 with c[4] == 1.
///
/// For a 4x4 matrix det(S - lambda I) equals det(lambda I - S), so these are
/// also the coefficients of the characteristic polynomial C(lambda).
using CharPoly = std::array<cplx, 5>;

/// Faddeev-LeVerrier recursion on S.
CharPoly char_poly(const Superoperator& s);
CharPoly char_poly(const Mat4& s);

/// k-th derivative (0 <= k <= 4) of the polynomial at lambda.
/// Throws std::out_of_range otherwise.
cplx poly_derivative_at(const CharPoly& coeffs, cplx lambda, int k);

struct EigenCluster {
  cplx mean;
  std::vector<int> members;  // indices into SpectralData::eigenvalues
  int algebraic = 0;         // cluster size
  int geometric = 0;         // nullity of (S - mean I)
  std::vector<int> jordan_blocks;  // sorted descending
  std::array<int, 4> rank_sequence{};  // rank (S - mean I)^k, k = 1..4
  bool ill_conditioned = false;
  std::string note;

  int largest_block() const {
    return jordan_blocks.empty() ? 0 : jordan_blocks.front();
  }
};

struct SpectralData {
  std::array<cplx, 4> eigenvalues;
  Mat4 eigenvectors;  // columns, as returned by the eigensolver
  std::vector<EigenCluster> clusters;

  bool ill_conditioned() const;
};

/// Tolerances for clustering and rank decisions.
///
/// cluster_tol is an absolute eigenvalue distance. The rank threshold for
/// (S - mean I)^k is rank_tol * sigma_max(S - mean I)^k.
struct SpectralTolerances {
  double cluster_tol;
  double rank_tol = 1e-8;

  /// cluster_tol = 1e-4 * ||S||_F.
  static SpectralTolerances defaults_for(const Mat4& s);
};

SpectralData eigendecompose(const Superoperator& s, double cluster_tol,
                            double rank_tol = 1e-8);

/// Number of singular values of m above `threshold`. `straddles` is set
/// when any singular value lies within a factor of ten of the threshold.
int numerical_rank(const Mat4& m, double threshold, bool* straddles = nullptr);

enum class DegeneracyKind { exceptional_point, trivial };

struct DegeneracyRecord {
  double alpha = 0.0;
  double theta = 0.0;
  double q = 0.0;
  cplx eigenvalue;
  int order = 0;  // algebraic multiplicity
  int geometric = 0;
  int largest_block = 0;
  std::vector<int> jordan_blocks;
  DegeneracyKind kind = DegeneracyKind::trivial;
  bool ill_conditioned = false;

  /// EP order (largest Jordan block) or 1 for trivial degeneracies.
  int ep_order() const {
    return kind == DegeneracyKind::exceptional_point ? largest_block : 1;
  }
};

std::string to_string(DegeneracyKind k);
/// "EP3", "EP2", "trivial"; suffixed with "?" when ill-conditioned.
std::string classification_label(const DegeneracyRecord& r);

/// One record per eigenvalue cluster of size >= 2 of the hybrid-Liouvillian
/// at p. Pass cluster_tol <= 0 to use SpectralTolerances::defaults_for.
std::vector<DegeneracyRecord> classify_degeneracy(const SystemParams& p,
                                                  double cluster_tol = 0.0,
                                                  double rank_tol = 1e-8);

}  // namespace hlep
