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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hlep/spectral.hpp"

namespace hlep {

enum class Branch {
  third_order_line_1,
  third_order_line_2,
  surface_q1,
  surface_q2,
  fourth_order_point,
  trivial_line,
};

std::string to_string(Branch b);

/// A point of the closed-form degeneracy manifold in (alpha, theta, q).
struct AtlasPoint {
  double alpha = 0.0;
  double theta = 0.0;
  double q = 0.0;
  Branch branch = Branch::fourth_order_point;
  /// All radicands real and q in [0, 1].
  bool valid = false;
};

/// The single fourth-order degeneracy, (1, pi/2, 0).
AtlasPoint fourth_order_point();

/// Lower and upper end of the alpha window on which the third-order line
/// has 0 <= q <= 1.
inline constexpr double third_order_alpha_min = 1.0;
inline constexpr double third_order_alpha_max = std::numbers::sqrt3;

/// Both third-order EP lines at alpha: (theta_1, q_line) and
/// (pi - theta_1, q_line). Throws DomainError outside [1, sqrt(3)], where
/// the line leaves 0 <= q <= 1 (and its q formula has a pole further out).
std::pair<AtlasPoint, AtlasPoint> third_order_line(double alpha);

/// theta_1(alpha) = arccos((alpha^4 - 8 alpha^2 + 1) / (6 alpha^2)) / 2.
double third_order_theta(double alpha);
/// q on the third-order line; called q1_line to keep it apart from the
/// second-order surface q1_surface.
double q1_line(double alpha);

/// eta = alpha^2 - 1 + sqrt((alpha^2 - 1)^2 - 12 alpha^2 cos^2 theta), or
/// nullopt where the radicand is negative (the surfaces are absent there).
std::optional<double> eta(double alpha, double theta);

/// q1_surface(alpha, theta) and q2_surface(alpha, theta). Invalid branches
/// are returned with valid == false and q set to NaN when not real.
/// On theta = pi/2, q = 0 (alpha != 1) the point is labelled trivial_line.
std::array<AtlasPoint, 2> second_order_surfaces(double alpha, double theta);

/// Closed-form characteristic polynomial coefficients for omega = 1:
///   c0 = alpha^2 sin^2(theta) (1 - q)
///   c1 = 2 alpha (alpha^2 + 1) - alpha q sin^2(theta)
///   c2 = 5 alpha^2 + 1,  c3 = 4 alpha,  c4 = 1.
/// Used by the Newton scanner as a route independent of char_poly.
std::array<double, 5> closed_form_char_poly(double alpha, double theta,
                                            double q);

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  std::vector<double> values() const;
};

struct ScanGrid {
  GridAxis alpha;
  GridAxis theta;
  GridAxis q;
};

struct ScanOptions {
  int max_iterations = 100;
  double dedup_radius = 1e-4;
  /// Tolerance on q outside [0, 1] before a solution is rejected.
  double q_slack = 1e-9;
  /// Solutions with alpha below this are on the trivial gamma = 0 plane.
  double min_alpha = 1e-6;
  double rank_tol = 1e-8;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct ScanResult {
  std::vector<DegeneracyRecord> records;
  int cells = 0;
  int converged = 0;
  int not_converged = 0;  // skipped cells
  int out_of_range = 0;   // converged outside the physical parameter box
};

/// Solves C = C' = ... = C^(n-1) = 0 with damped Newton from every grid
/// cell. Unknowns are the (real) degenerate eigenvalue and
///   n = 2: q             (alpha, theta from the grid)
///   n = 3: theta, q      (alpha from the grid)
///   n = 4: alpha, theta, q
/// Converged points are classified with classify_degeneracy and
/// deduplicated within dedup_radius in (alpha, theta, q).
ScanResult scan_numeric(const ScanGrid& grid, int target_order,
                        const ScanOptions& options = {});

/// Euclidean distance in (alpha, theta, q) from a scan solution of the given
/// target order to the nearest closed-form point with the same fixed
/// coordinates. Infinity when no branch exists there.
double analytic_deviation(const DegeneracyRecord& r, int target_order);

/// Closed-form points the scan over `grid` should find: surface points at
/// every (alpha, theta) node for order 2, both lines at every alpha node in
/// [1, sqrt(3)] for order 3, the fourth-order point for order 4. Points
/// outside the grid box are dropped.
std::vector<AtlasPoint> analytic_points(const ScanGrid& grid, int target_order);

/// Two-way agreement between a scan and the closed-form branches.
struct CrossValidation {
  int numeric = 0;
  int numeric_matched = 0;
  double max_numeric_deviation = 0.0;
  int analytic = 0;
  int analytic_matched = 0;
  double max_analytic_deviation = 0.0;

  bool passed() const {
    return numeric_matched == numeric && analytic_matched == analytic;
  }
};

CrossValidation cross_validate(const ScanGrid& grid, int target_order,
                               const ScanResult& scan, double tol = 1e-6);

struct BranchValidation {
  Branch branch;
  int samples = 0;
  int agreeing = 0;
  int ill_conditioned = 0;
  /// max over samples and k < order of |C^(k)(lambda)| / ||S||_F^(4-k).
  double max_residual = 0.0;
  std::string expected;

  bool passed() const { return samples > 0 && agreeing == samples; }
};

struct AtlasValidationReport {
  std::vector<BranchValidation> branches;

  bool passed() const;
};

/// Samples the closed-form manifolds and checks the Jordan classification
/// at each sample: third-order lines are EP3, surfaces (away from the
/// trivial line and the lines bounding them) are EP2, the trivial line has
/// two eigenvectors and the fourth-order point is an EP3 of multiplicity 4.
AtlasValidationReport validate_atlas(int sample_count, double rank_tol = 1e-8);

/// Deterministic samples used by validate_atlas and the CSV export.
std::vector<AtlasPoint> sample_third_order_lines(int count);
std::vector<AtlasPoint> sample_surfaces(int count);
std::vector<AtlasPoint> sample_trivial_line(int count);

}  // namespace hlep
