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

#include "hlep/ep_atlas.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <numbers>

namespace hlep {

std::string to_string(Branch b) {
  switch (b) {
    case Branch::third_order_line_1:
      return "third-order-line-1";
    case Branch::third_order_line_2:
      return "third-order-line-2";
    case Branch::surface_q1:
      return "surface-q1";
    case Branch::surface_q2:
      return "surface-q2";
    case Branch::fourth_order_point:
      return "fourth-order-point";
    case Branch::trivial_line:
      return "trivial-line";
  }
  return "?";
}

AtlasPoint fourth_order_point() {
  return AtlasPoint{1.0, pi / 2.0, 0.0, Branch::fourth_order_point, true};
}

double third_order_theta(double alpha) {
  const double a2 = alpha * alpha;
  const double arg = std::clamp((a2 * a2 - 8.0 * a2 + 1.0) / (6.0 * a2), -1.0, 1.0);
  return 0.5 * std::acos(arg);
}

double q1_line(double alpha) {
  const double a2 = alpha * alpha;
  const double num = 8.0 * std::sqrt(6.0) * alpha * std::pow(a2 - 1.0, 1.5);
  return -num / (3.0 * (a2 * a2 - 14.0 * a2 + 1.0));
}

std::pair<AtlasPoint, AtlasPoint> third_order_line(double alpha) {
  if (!(alpha >= third_order_alpha_min && alpha <= third_order_alpha_max)) {
    std::ostringstream os;
    os << "alpha = " << alpha
       << " is outside the valid range [1, sqrt(3)] of the third-order lines "
          "(0 <= q <= 1 implies alpha in [1, sqrt(3)])";
    throw DomainError(os.str());
  }
  const double theta = third_order_theta(alpha);
  // Rounding at the window ends can push q a few ulps outside [0, 1].
  const double q = std::clamp(q1_line(alpha), 0.0, 1.0);
  return {AtlasPoint{alpha, theta, q, Branch::third_order_line_1, true},
          AtlasPoint{alpha, pi - theta, q, Branch::third_order_line_2, true}};
}

std::optional<double> eta(double alpha, double theta) {
  const double a2m1 = alpha * alpha - 1.0;
  const double c = std::cos(theta);
  const double radicand = a2m1 * a2m1 - 12.0 * alpha * alpha * c * c;
  if (radicand < 0.0) {
    // cos(pi/2) is not exactly zero in floating point.
    if (radicand > -1e-14 * std::max(1.0, a2m1 * a2m1)) return a2m1 + 0.0;
    return std::nullopt;
  }
  return a2m1 + std::sqrt(radicand);
}

std::array<AtlasPoint, 2> second_order_surfaces(double alpha, double theta) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::array<AtlasPoint, 2> out{
      AtlasPoint{alpha, theta, nan, Branch::surface_q1, false},
      AtlasPoint{alpha, theta, nan, Branch::surface_q2, false}};
  const auto e = eta(alpha, theta);
  const double s = std::sin(theta);
  const double s2 = s * s;
  if (!e || alpha <= 0.0 || s2 == 0.0) return out;

  const double a2m1 = alpha * alpha - 1.0;
  const double scale = std::max(1.0, std::abs(a2m1));
  auto clean = [&](double r) { return std::abs(r) <= 1e-13 * scale ? 0.0 : r; };
  const double eta_v = clean(*e);
  const double r2 = clean(2.0 * a2m1 - eta_v);

  auto finish = [](AtlasPoint& p, double q) {
    p.q = q;
    p.valid = q >= -1e-12 && q <= 1.0 + 1e-12;
    if (p.valid) p.q = std::clamp(q, 0.0, 1.0);
  };

  if (eta_v >= 0.0) {
    const double q1 = std::sqrt(2.0 * eta_v) * (3.0 * a2m1 - eta_v) /
                      (3.0 * std::sqrt(3.0) * alpha * s2);
    finish(out[0], q1);
  }
  if (r2 >= 0.0) {
    const double q2 = std::sqrt(2.0 / 3.0) * std::sqrt(r2) * (a2m1 + eta_v) /
                      (3.0 * alpha * s2);
    finish(out[1], q2);
  }
  const bool on_equator = std::abs(std::cos(theta)) < 1e-12;
  for (auto& p : out) {
    if (p.valid && on_equator && p.q == 0.0 && alpha != 1.0) {
      p.branch = Branch::trivial_line;
    }
  }
  return out;
}

std::array<double, 5> closed_form_char_poly(double alpha, double theta,
                                            double q) {
  const double s = std::sin(theta);
  const double s2 = s * s;
  const double a2 = alpha * alpha;
  return {a2 * s2 * (1.0 - q), 2.0 * alpha * (a2 + 1.0) - alpha * q * s2,
          5.0 * a2 + 1.0, 4.0 * alpha, 1.0};
}

std::vector<double> GridAxis::values() const {
  std::vector<double> v;
  if (count <= 0) return v;
  if (count == 1) return {min};
  v.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    v.push_back(min + (max - min) * static_cast<double>(i) / (count - 1));
  }
  return v;
}

namespace {

// Newton runs in extended precision: at the trivial line the Jacobian is
// singular and the attainable accuracy is sqrt(machine epsilon).
using Real = long double;
using VecR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using MatR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

enum Param { kAlpha = 0, kTheta = 1, kQ = 2 };

std::array<Real, 5> coefficients(Real alpha, Real theta, Real q) {
  const Real s = std::sin(theta);
  const Real s2 = s * s;
  const Real a2 = alpha * alpha;
  return {a2 * s2 * (1 - q), 2 * alpha * (a2 + 1) - alpha * q * s2,
          5 * a2 + 1, 4 * alpha, 1};
}

// d/dparam of the closed-form coefficients.
std::array<Real, 5> coeff_partials(Real alpha, Real theta, Real q,
                                   Param which) {
  const Real s = std::sin(theta);
  const Real s2 = s * s;
  const Real sin2t = std::sin(2 * theta);
  const Real a2 = alpha * alpha;
  switch (which) {
    case kAlpha:
      return {2 * alpha * s2 * (1 - q), 6 * a2 + 2 - q * s2, 10 * alpha, 4, 0};
    case kTheta:
      return {a2 * (1 - q) * sin2t, -alpha * q * sin2t, 0, 0, 0};
    case kQ:
      return {-a2 * s2, -alpha * s2, 0, 0, 0};
  }
  return {};
}

// k-th derivative of sum_j c_j x^j at x.
Real real_poly_derivative(const std::array<Real, 5>& c, Real x, int k) {
  Real acc = 0;
  for (int j = 4; j >= k; --j) {
    Real falling = 1;
    for (int i = 0; i < k; ++i) falling *= static_cast<Real>(j - i);
    acc = acc * x + falling * c[static_cast<std::size_t>(j)];
  }
  return acc;
}

struct Unknowns {
  int order;
  std::array<Param, 3> free{};
  int n_free;
};

Unknowns unknowns_for(int order) {
  switch (order) {
    case 2:
      return {2, {kQ, kQ, kQ}, 1};
    case 3:
      return {3, {kTheta, kQ, kQ}, 2};
    case 4:
      return {4, {kAlpha, kTheta, kQ}, 3};
  }
  throw std::invalid_argument("target_order = " + std::to_string(order) +
                              " is outside the valid set {2, 3, 4}");
}

struct NewtonState {
  Real lambda;
  std::array<Real, 3> params;  // alpha, theta, q
};

VecR residual(const Unknowns& u, const NewtonState& x) {
  const auto c = coefficients(x.params[kAlpha], x.params[kTheta], x.params[kQ]);
  VecR r(u.order);
  for (int k = 0; k < u.order; ++k) r(k) = real_poly_derivative(c, x.lambda, k);
  return r;
}

MatR jacobian(const Unknowns& u, const NewtonState& x) {
  const auto c = coefficients(x.params[kAlpha], x.params[kTheta], x.params[kQ]);
  MatR j(u.order, u.order);
  for (int k = 0; k < u.order; ++k) {
    j(k, 0) = real_poly_derivative(c, x.lambda, k + 1);
    for (int f = 0; f < u.n_free; ++f) {
      const auto dc = coeff_partials(x.params[kAlpha], x.params[kTheta],
                                     x.params[kQ], u.free[static_cast<std::size_t>(f)]);
      j(k, f + 1) = real_poly_derivative(dc, x.lambda, k);
    }
  }
  return j;
}

NewtonState step(const Unknowns& u, const NewtonState& x, const VecR& dx,
                 Real scale) {
  NewtonState y = x;
  y.lambda += scale * dx(0);
  for (int f = 0; f < u.n_free; ++f) {
    y.params[u.free[static_cast<std::size_t>(f)]] += scale * dx(f + 1);
  }
  return y;
}

Real coefficient_scale(const NewtonState& x) {
  const auto c = coefficients(x.params[kAlpha], x.params[kTheta], x.params[kQ]);
  const Real lam = std::max<Real>(1, std::abs(x.lambda));
  Real s = 1;
  Real p = 1;
  for (int j = 0; j < 5; ++j) {
    s = std::max(s, std::abs(c[static_cast<std::size_t>(j)]) * p);
    p *= lam;
  }
  return s;
}

Real inf_norm(const VecR& v) { return v.cwiseAbs().maxCoeff(); }

std::optional<NewtonState> damped_newton(const Unknowns& u, NewtonState x,
                                         int max_iterations) {
  Real rnorm = inf_norm(residual(u, x));
  for (int it = 0; it < max_iterations; ++it) {
    const VecR r = residual(u, x);
    const MatR j = jacobian(u, x);
    const VecR dx = j.completeOrthogonalDecomposition().solve(-r);
    if (!dx.allFinite()) return std::nullopt;

    // Halve the step until the residual decreases.
    Real scale = 1;
    NewtonState trial = step(u, x, dx, scale);
    Real tnorm = inf_norm(residual(u, trial));
    int halvings = 0;
    while (!(tnorm < rnorm) && halvings < 30) {
      scale *= 0.5L;
      trial = step(u, x, dx, scale);
      tnorm = inf_norm(residual(u, trial));
      ++halvings;
    }
    if (!(tnorm < rnorm)) break;  // stagnated at round-off level
    x = trial;
    rnorm = tnorm;
    Real xs = 1 + std::abs(x.lambda);
    for (Real v : x.params) xs = std::max(xs, std::abs(v));
    if (scale * inf_norm(dx) <= 1e-18L * xs) break;
  }
  if (!std::isfinite(static_cast<double>(rnorm))) return std::nullopt;
  if (rnorm > 1e-13L * coefficient_scale(x)) return std::nullopt;
  return x;
}

double eigenvalue_seed(double alpha, double theta, double q) {
  const auto c = closed_form_char_poly(alpha, theta, q);
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) companion(i, 3) = -c[static_cast<std::size_t>(i)];
  const Eigen::EigenSolver<Eigen::Matrix4d> es(companion, false);
  const auto ev = es.eigenvalues();
  double best = std::numeric_limits<double>::infinity();
  cplx mean = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double d = std::abs(ev(i) - ev(j));
      if (d < best) {
        best = d;
        mean = 0.5 * (ev(i) + ev(j));
      }
    }
  }
  return mean.real();
}

struct Candidate {
  bool converged = false;
  bool in_range = false;
  NewtonState x{};
};

Candidate solve_cell(const Unknowns& u, double alpha, double theta, double q,
                     const ScanOptions& opt) {
  Candidate out;
  NewtonState seed{eigenvalue_seed(alpha, theta, q), {alpha, theta, q}};

  const auto sol = damped_newton(u, seed, opt.max_iterations);
  if (!sol) return out;
  out.converged = true;
  NewtonState x = *sol;
  // C depends on theta only through sin^2(theta): fold into [0, pi).
  const Real pi_l = std::numbers::pi_v<long double>;
  Real th = std::fmod(x.params[kTheta], pi_l);
  if (th < 0) th += pi_l;
  x.params[kTheta] = th;
  const double a = static_cast<double>(x.params[kAlpha]);
  const double qq = static_cast<double>(x.params[kQ]);
  out.in_range = a >= opt.min_alpha && qq >= -opt.q_slack &&
                 qq <= 1.0 + opt.q_slack;
  x.params[kQ] = std::clamp<Real>(x.params[kQ], 0, 1);
  out.x = x;
  return out;
}

DegeneracyRecord classify_solution(const NewtonState& xl, int target,
                                   double rank_tol) {
  struct {
    double lambda;
    std::array<double, 3> params;
  } x{static_cast<double>(xl.lambda),
      {static_cast<double>(xl.params[0]), static_cast<double>(xl.params[1]),
       static_cast<double>(xl.params[2])}};
  const SystemParams p = SystemParams::from_alpha(
      x.params[kAlpha], std::clamp(x.params[kTheta], 0.0, pi), x.params[kQ]);
  const auto records = classify_degeneracy(p, 0.0, rank_tol);
  DegeneracyRecord best;
  best.alpha = x.params[kAlpha];
  best.theta = x.params[kTheta];
  best.q = x.params[kQ];
  best.eigenvalue = x.lambda;
  best.order = 1;
  best.ill_conditioned = true;
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    const double d = std::abs(r.eigenvalue - x.lambda);
    if (d < dist) {
      dist = d;
      best = r;
      best.alpha = x.params[kAlpha];
      best.theta = x.params[kTheta];
      best.q = x.params[kQ];
      best.eigenvalue = x.lambda;
    }
  }
  if (best.order < target) best.ill_conditioned = true;
  return best;
}

}  // namespace

ScanResult scan_numeric(const ScanGrid& grid, int target_order,
                        const ScanOptions& options) {
  const Unknowns u = unknowns_for(target_order);
  const auto alphas = grid.alpha.values();
  const auto thetas = grid.theta.values();
  const auto qs = grid.q.values();
  for (double a : alphas) {
    if (!(a >= 0.0)) throw DomainError("grid alpha must be in [0, inf)");
  }
  for (double t : thetas) {
    if (!(t >= 0.0 && t <= pi)) throw DomainError("grid theta must be in [0, pi]");
  }
  for (double q : qs) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("grid q must be in [0, 1]");
  }

  const std::size_t n_cells = alphas.size() * thetas.size() * qs.size();
  std::vector<Candidate> cells(n_cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n_cells; i = next++) {
      const std::size_t iq = i % qs.size();
      const std::size_t it = (i / qs.size()) % thetas.size();
      const std::size_t ia = i / (qs.size() * thetas.size());
      cells[i] = solve_cell(u, alphas[ia], thetas[it], qs[iq], options);
    }
  };
  unsigned n_threads = options.threads ? options.threads
                                       : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(
      std::min<std::size_t>(n_threads, std::max<std::size_t>(n_cells, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }

  // Single-threaded reduction in cell order keeps output deterministic.
  ScanResult result;
  result.cells = static_cast<int>(n_cells);
  const double r2 = options.dedup_radius * options.dedup_radius;
  for (const auto& c : cells) {
    if (!c.converged) {
      ++result.not_converged;
      continue;
    }
    ++result.converged;
    if (!c.in_range) {
      ++result.out_of_range;
      continue;
    }
    const bool duplicate = std::any_of(
        result.records.begin(), result.records.end(),
        [&](const DegeneracyRecord& r) {
          const double da = r.alpha - static_cast<double>(c.x.params[kAlpha]);
          const double dt = r.theta - static_cast<double>(c.x.params[kTheta]);
          const double dq = r.q - static_cast<double>(c.x.params[kQ]);
          return da * da + dt * dt + dq * dq <= r2;
        });
    if (duplicate) continue;
    result.records.push_back(
        classify_solution(c.x, target_order, options.rank_tol));
  }
  return result;
}

namespace {

double distance(double a0, double t0, double q0, double a1, double t1,
                double q1) {
  return std::sqrt((a0 - a1) * (a0 - a1) + (t0 - t1) * (t0 - t1) +
                   (q0 - q1) * (q0 - q1));
}

bool inside(const GridAxis& axis, double v) {
  const double lo = std::min(axis.min, axis.max);
  const double hi = std::max(axis.min, axis.max);
  const double slack = 1e-12 * std::max(1.0, hi - lo);
  return axis.count > 0 && v >= lo - slack && v <= hi + slack;
}

}  // namespace

double analytic_deviation(const DegeneracyRecord& r, int target_order) {
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](const AtlasPoint& p) {
    if (p.valid) {
      best = std::min(best, distance(r.alpha, r.theta, r.q, p.alpha, p.theta, p.q));
    }
  };
  switch (target_order) {
    case 4:
      consider(fourth_order_point());
      break;
    case 3:
      if (r.alpha >= third_order_alpha_min && r.alpha <= third_order_alpha_max) {
        const auto [l1, l2] = third_order_line(r.alpha);
        consider(l1);
        consider(l2);
      }
      break;
    case 2:
      for (const auto& p : second_order_surfaces(r.alpha, r.theta)) consider(p);
      break;
    default:
      throw std::invalid_argument("target_order = " +
                                  std::to_string(target_order) +
                                  " is outside the valid set {2, 3, 4}");
  }
  return best;
}

std::vector<AtlasPoint> analytic_points(const ScanGrid& grid, int target_order) {
  std::vector<AtlasPoint> out;
  auto keep = [&](const AtlasPoint& p) {
    if (p.valid && inside(grid.alpha, p.alpha) && inside(grid.theta, p.theta) &&
        inside(grid.q, p.q)) {
      out.push_back(p);
    }
  };
  switch (target_order) {
    case 4:
      keep(fourth_order_point());
      break;
    case 3:
      for (double a : grid.alpha.values()) {
        if (a < third_order_alpha_min || a > third_order_alpha_max) continue;
        const auto [l1, l2] = third_order_line(a);
        keep(l1);
        keep(l2);
      }
      break;
    case 2:
      for (double a : grid.alpha.values()) {
        for (double t : grid.theta.values()) {
          for (const auto& p : second_order_surfaces(a, t)) keep(p);
        }
      }
      break;
    default:
      throw std::invalid_argument("target_order = " +
                                  std::to_string(target_order) +
                                  " is outside the valid set {2, 3, 4}");
  }
  return out;
}

CrossValidation cross_validate(const ScanGrid& grid, int target_order,
                               const ScanResult& scan, double tol) {
  CrossValidation cv;
  for (const auto& r : scan.records) {
    const double d = analytic_deviation(r, target_order);
    ++cv.numeric;
    if (d <= tol) ++cv.numeric_matched;
    cv.max_numeric_deviation = std::max(cv.max_numeric_deviation, d);
  }
  for (const auto& p : analytic_points(grid, target_order)) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& r : scan.records) {
      d = std::min(d, distance(r.alpha, r.theta, r.q, p.alpha, p.theta, p.q));
    }
    ++cv.analytic;
    if (d <= tol) ++cv.analytic_matched;
    cv.max_analytic_deviation = std::max(cv.max_analytic_deviation, d);
  }
  return cv;
}

std::vector<AtlasPoint> sample_third_order_lines(int count) {
  std::vector<AtlasPoint> out;
  const int n1 = (count + 1) / 2;
  const int n2 = count - n1;
  for (int line = 0; line < 2; ++line) {
    const int n = line == 0 ? n1 : n2;
    for (int i = 0; i < n; ++i) {
      const double a = third_order_alpha_min +
                       (third_order_alpha_max - third_order_alpha_min) *
                           (static_cast<double>(i) + 0.5) / n;
      const auto [l1, l2] = third_order_line(a);
      out.push_back(line == 0 ? l1 : l2);
    }
  }
  return out;
}

std::vector<AtlasPoint> sample_surfaces(int count) {
  // Candidates stay clear of the trivial line (theta = pi/2, q = 0), of the
  // third-order lines bounding the surfaces, and of q = 0, 1.
  std::vector<AtlasPoint> candidates;
  constexpr int n_alpha = 60;
  constexpr int n_theta = 60;
  for (int i = 0; i < n_alpha; ++i) {
    const double a = 1.05 + 2.45 * i / (n_alpha - 1.0);
    const double a2m1 = a * a - 1.0;
    for (int j = 0; j < n_theta; ++j) {
      const double th = 0.05 + (pi - 0.1) * j / (n_theta - 1.0);
      const double c = std::cos(th);
      const double radicand = a2m1 * a2m1 - 12.0 * a * a * c * c;
      if (radicand < 0.05 * a2m1 * a2m1) continue;
      if (std::abs(th - pi / 2.0) < 0.02) continue;
      for (const auto& p : second_order_surfaces(a, th)) {
        if (!p.valid || p.q < 0.02 || p.q > 0.98) continue;
        candidates.push_back(p);
      }
    }
  }
  std::vector<AtlasPoint> out;
  if (candidates.empty() || count <= 0) return out;
  for (int i = 0; i < count; ++i) {
    const std::size_t idx = static_cast<std::size_t>(
        static_cast<double>(i) * candidates.size() / count);
    out.push_back(candidates[idx]);
  }
  return out;
}

std::vector<AtlasPoint> sample_trivial_line(int count) {
  std::vector<AtlasPoint> out;
  for (int i = 0; i < count; ++i) {
    const double a = 1.0 + 2.0 * (static_cast<double>(i) + 1.0) / count;
    out.push_back(AtlasPoint{a, pi / 2.0, 0.0, Branch::trivial_line, true});
  }
  return out;
}

bool AtlasValidationReport::passed() const {
  return std::all_of(branches.begin(), branches.end(),
                     [](const BranchValidation& b) { return b.passed(); });
}

namespace {

struct Expectation {
  int order;
  int largest_block;
  DegeneracyKind kind;
};

void check_point(const AtlasPoint& pt, const Expectation& ex, double rank_tol,
                 BranchValidation& bv) {
  ++bv.samples;
  const SystemParams p = SystemParams::from_alpha(pt.alpha, pt.theta, pt.q);
  const auto records = classify_degeneracy(p, 0.0, rank_tol);
  if (records.empty()) return;
  const auto it = std::max_element(
      records.begin(), records.end(),
      [](const auto& a, const auto& b) { return a.order < b.order; });
  if (it->ill_conditioned) ++bv.ill_conditioned;
  if (!it->ill_conditioned && it->order == ex.order &&
      it->largest_block == ex.largest_block && it->kind == ex.kind) {
    ++bv.agreeing;
  }
  const Mat4 s = build_hybrid_liouvillian(p).matrix();
  const auto c = char_poly(s);
  const double norm = std::max(1.0, s.norm());
  for (int k = 0; k < ex.order; ++k) {
    const double r =
        std::abs(poly_derivative_at(c, it->eigenvalue, k)) / std::pow(norm, 4 - k);
    bv.max_residual = std::max(bv.max_residual, r);
  }
}

}  // namespace

AtlasValidationReport validate_atlas(int sample_count, double rank_tol) {
  if (sample_count < 1) {
    throw DomainError("sample_count must be in [1, inf)");
  }
  AtlasValidationReport report;

  BranchValidation lines{Branch::third_order_line_1, 0, 0, 0, 0.0, "EP3"};
  for (const auto& pt : sample_third_order_lines(sample_count)) {
    check_point(pt, {3, 3, DegeneracyKind::exceptional_point}, rank_tol, lines);
  }
  report.branches.push_back(lines);

  BranchValidation surfaces{Branch::surface_q1, 0, 0, 0, 0.0, "EP2"};
  for (const auto& pt : sample_surfaces(sample_count)) {
    check_point(pt, {2, 2, DegeneracyKind::exceptional_point}, rank_tol,
                surfaces);
  }
  report.branches.push_back(surfaces);

  BranchValidation trivial{Branch::trivial_line, 0, 0, 0, 0.0, "trivial"};
  for (const auto& pt : sample_trivial_line(sample_count)) {
    check_point(pt, {2, 1, DegeneracyKind::trivial}, rank_tol, trivial);
  }
  report.branches.push_back(trivial);

  BranchValidation fourth{Branch::fourth_order_point, 0, 0, 0, 0.0,
                          "EP3 (multiplicity 4)"};
  check_point(fourth_order_point(), {4, 3, DegeneracyKind::exceptional_point},
              rank_tol, fourth);
  report.branches.push_back(fourth);
  return report;
}

}  // namespace hlep
