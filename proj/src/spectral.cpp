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

#include "hlep/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace hlep {

CharPoly char_poly(const Mat4& s) {
  // M_k = S M_{k-1} + c_{4-k+1} I,  c_{4-k} = -tr(S M_k) / k.
  CharPoly c{};
  c[4] = 1.0;
  Mat4 m = Mat4::Zero();
  for (int k = 1; k <= 4; ++k) {
    m = s * m + c[4 - k + 1] * Mat4::Identity();
    c[4 - k] = -(s * m).trace() / static_cast<double>(k);
  }
  return c;
}

CharPoly char_poly(const Superoperator& s) { return char_poly(s.matrix()); }

cplx poly_derivative_at(const CharPoly& coeffs, cplx lambda, int k) {
  if (k < 0 || k > 4) {
    throw std::out_of_range("derivative order k = " + std::to_string(k) +
                            " is outside the valid range [0, 4]");
  }
  // Horner on the k-th derivative: sum_j j!/(j-k)! c_j lambda^(j-k).
  cplx acc = 0.0;
  for (int j = 4; j >= k; --j) {
    double falling = 1.0;
    for (int i = 0; i < k; ++i) falling *= static_cast<double>(j - i);
    acc = acc * lambda + falling * coeffs[static_cast<std::size_t>(j)];
  }
  return acc;
}

int numerical_rank(const Mat4& m, double threshold, bool* straddles) {
  const Eigen::JacobiSVD<Mat4> svd(m);
  const auto& sv = svd.singularValues();
  if (straddles) *straddles = false;
  const double thr = threshold;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > thr) ++rank;
    if (straddles && sv(i) > 0.1 * thr && sv(i) < 10.0 * thr) *straddles = true;
  }
  return rank;
}

bool SpectralData::ill_conditioned() const {
  return std::any_of(clusters.begin(), clusters.end(),
                     [](const EigenCluster& c) { return c.ill_conditioned; });
}

SpectralTolerances SpectralTolerances::defaults_for(const Mat4& s) {
  return SpectralTolerances{1e-4 * s.norm(), 1e-8};
}

namespace {

void analyse_cluster(const Mat4& s, double rank_tol, EigenCluster& c) {
  const Mat4 a = s - c.mean * Mat4::Identity();
  // Threshold for A^k is rank_tol * sigma_max(A)^k; sigma_max(A^k) itself
  // collapses to round-off when A is nilpotent.
  const double smax = Eigen::JacobiSVD<Mat4>(a).singularValues()(0);
  Mat4 power = Mat4::Identity();
  double scale = 1.0;
  for (int k = 0; k < 4; ++k) {
    power = power * a;
    scale *= smax;
    bool straddles = false;
    c.rank_sequence[static_cast<std::size_t>(k)] =
        numerical_rank(power, rank_tol * scale, &straddles);
    if (straddles) {
      c.ill_conditioned = true;
      c.note = "singular value within a factor of 10 of the rank threshold";
    }
  }
  c.geometric = 4 - c.rank_sequence[0];

  // Number of Jordan blocks of size >= k is r_{k-1} - r_k with r_0 = 4.
  std::array<int, 5> at_least{};
  int prev = 4;
  for (int k = 1; k <= 4; ++k) {
    at_least[static_cast<std::size_t>(k)] =
        prev - c.rank_sequence[static_cast<std::size_t>(k - 1)];
    prev = c.rank_sequence[static_cast<std::size_t>(k - 1)];
  }
  c.jordan_blocks.clear();
  for (int k = 4; k >= 1; --k) {
    const int next = k < 4 ? at_least[static_cast<std::size_t>(k + 1)] : 0;
    const int exact = at_least[static_cast<std::size_t>(k)] - next;
    for (int i = 0; i < exact; ++i) c.jordan_blocks.push_back(k);
  }

  const int alg_from_ranks = 4 - c.rank_sequence[3];
  bool monotone = true;
  for (int k = 1; k < 4; ++k) {
    if (c.rank_sequence[static_cast<std::size_t>(k)] >
        c.rank_sequence[static_cast<std::size_t>(k - 1)]) {
      monotone = false;
    }
  }
  if (!monotone || at_least[1] < 0 || alg_from_ranks != c.algebraic) {
    c.ill_conditioned = true;
    c.note = "rank sequence inconsistent with cluster size " +
             std::to_string(c.algebraic);
  }
}

}  // namespace

SpectralData eigendecompose(const Superoperator& s, double cluster_tol,
                            double rank_tol) {
  if (!(cluster_tol > 0.0)) {
    throw std::invalid_argument("cluster_tol must be in (0, inf)");
  }
  if (!(rank_tol > 0.0)) {
    throw std::invalid_argument("rank_tol must be in (0, inf)");
  }
  const Eigen::ComplexEigenSolver<Mat4> solver(s.matrix());
  SpectralData out;
  for (int i = 0; i < 4; ++i) {
    out.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  }
  out.eigenvectors = solver.eigenvectors();

  // Single-linkage clustering by pairwise distance.
  std::array<int, 4> parent{0, 1, 2, 3};
  auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  };
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (std::abs(out.eigenvalues[static_cast<std::size_t>(i)] -
                   out.eigenvalues[static_cast<std::size_t>(j)]) <=
          cluster_tol) {
        parent[static_cast<std::size_t>(find(j))] = find(i);
      }
    }
  }
  for (int i = 0; i < 4; ++i) {
    const int root = find(i);
    auto it = std::find_if(
        out.clusters.begin(), out.clusters.end(),
        [&](const EigenCluster& c) { return find(c.members.front()) == root; });
    if (it == out.clusters.end()) {
      out.clusters.push_back(EigenCluster{});
      it = std::prev(out.clusters.end());
    }
    it->members.push_back(i);
  }
  for (auto& c : out.clusters) {
    c.algebraic = static_cast<int>(c.members.size());
    cplx sum = 0.0;
    for (int m : c.members) sum += out.eigenvalues[static_cast<std::size_t>(m)];
    c.mean = sum / static_cast<double>(c.algebraic);
    analyse_cluster(s.matrix(), rank_tol, c);
  }
  return out;
}

std::string to_string(DegeneracyKind k) {
  return k == DegeneracyKind::exceptional_point ? "EP" : "trivial";
}

std::string classification_label(const DegeneracyRecord& r) {
  std::string s = r.kind == DegeneracyKind::exceptional_point
                      ? "EP" + std::to_string(r.largest_block)
                      : "trivial";
  if (r.ill_conditioned) s += "?";
  return s;
}

std::vector<DegeneracyRecord> classify_degeneracy(const SystemParams& p,
                                                  double cluster_tol,
                                                  double rank_tol) {
  const Superoperator s = build_hybrid_liouvillian(p);
  if (cluster_tol <= 0.0) {
    cluster_tol = SpectralTolerances::defaults_for(s.matrix()).cluster_tol;
    if (cluster_tol == 0.0) cluster_tol = std::numeric_limits<double>::min();
  }
  const SpectralData data = eigendecompose(s, cluster_tol, rank_tol);
  std::vector<DegeneracyRecord> records;
  for (const auto& c : data.clusters) {
    if (c.algebraic < 2) continue;
    DegeneracyRecord r;
    r.alpha = p.omega() > 0.0 ? p.alpha()
                              : std::numeric_limits<double>::infinity();
    r.theta = p.theta();
    r.q = p.q();
    r.eigenvalue = c.mean;
    r.order = c.algebraic;
    r.geometric = c.geometric;
    r.jordan_blocks = c.jordan_blocks;
    r.largest_block = c.largest_block();
    r.kind = r.largest_block >= 2 ? DegeneracyKind::exceptional_point
                                  : DegeneracyKind::trivial;
    r.ill_conditioned = c.ill_conditioned;
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace hlep
