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

#include "hlep/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

namespace hlep {

std::string to_string(TrajectoryKind k) {
  switch (k) {
    case TrajectoryKind::tilted:
      return "tilted";
    case TrajectoryKind::flat:
      return "flat";
    case TrajectoryKind::hopping:
      return "hopping";
    case TrajectoryKind::custom:
      return "custom";
  }
  return "?";
}

TrajectoryKind trajectory_kind_from_string(const std::string& name) {
  if (name == "tilted") return TrajectoryKind::tilted;
  if (name == "flat") return TrajectoryKind::flat;
  if (name == "hopping") return TrajectoryKind::hopping;
  throw DomainError("kind '" + name + "' is not one of tilted|flat|hopping");
}

Chirality chirality_from_int(int chi) {
  if (chi == 1) return Chirality::plus;
  if (chi == -1) return Chirality::minus;
  throw DomainError("chi = " + std::to_string(chi) +
                    " is outside the valid set {+1, -1}");
}

namespace {

void require(bool ok, const char* name, double value, const char* range) {
  if (!ok) {
    std::ostringstream os;
    os << name << " = " << value << " is outside the valid range " << range;
    throw DomainError(os.str());
  }
}

double clamp_theta(double theta) { return std::clamp(theta, 0.0, pi); }

}  // namespace

Trajectory Trajectory::tilted(double q0, Chirality chi, double total_time,
                              double omega, double alpha_max) {
  require(q0 >= 0.0 && q0 <= 1.0, "q0", q0, "[0, 1]");
  require(total_time > 0.0, "T", total_time, "(0, inf)");
  require(omega >= 0.0, "omega", omega, "[0, inf)");
  require(alpha_max >= 0.0, "alpha_max", alpha_max, "[0, inf)");
  Trajectory tr;
  tr.kind_ = TrajectoryKind::tilted;
  tr.q0_ = q0;
  tr.chi_ = chi;
  tr.omega_ = omega;
  tr.alpha_max_ = alpha_max;
  const double c = static_cast<double>(static_cast<int>(chi));
  tr.segments_.push_back(
      {0.0, total_time, [=](double t) {
         const double s = std::sin(pi * t / total_time);
         return ControlPoint{
             alpha_max * s * s,
             clamp_theta(pi / 2.0 - 1.5 * std::sin(2.0 * pi * c * t / total_time)),
             q0 * s * s};
       }});
  return tr;
}

Trajectory Trajectory::flat(double q0, Chirality chi, double total_time,
                            double omega, double alpha_max) {
  Trajectory tr = tilted(q0, chi, total_time, omega, alpha_max);
  tr.kind_ = TrajectoryKind::flat;
  const double c = static_cast<double>(static_cast<int>(chi));
  tr.segments_.front().sampler = [=](double t) {
    const double s = std::sin(pi * t / total_time);
    return ControlPoint{
        alpha_max * s * s,
        clamp_theta(pi / 2.0 - 1.5 * std::sin(2.0 * pi * c * t / total_time)),
        q0};
  };
  return tr;
}

Trajectory Trajectory::hopping(double q0, Chirality chi, double t1, double t2,
                               double alpha_i, double alpha_ii, double omega) {
  require(q0 >= 0.0 && q0 <= 1.0, "q0", q0, "[0, 1]");
  require(t1 > 0.0, "T1", t1, "(0, inf)");
  require(t2 > 0.0, "T2", t2, "(0, inf)");
  require(alpha_i >= 0.0, "alpha_i", alpha_i, "[0, inf)");
  require(alpha_ii > 0.0, "alpha_ii", alpha_ii, "(0, inf)");
  require(omega >= 0.0, "omega", omega, "[0, inf)");
  Trajectory tr;
  tr.kind_ = TrajectoryKind::hopping;
  tr.q0_ = q0;
  tr.chi_ = chi;
  tr.omega_ = omega;
  tr.t1_ = t1;
  tr.t2_ = t2;
  tr.alpha_i_ = alpha_i;
  tr.alpha_ii_ = alpha_ii;
  const double c = static_cast<double>(static_cast<int>(chi));
  const double total = 2.0 * t1 + t2;
  tr.segments_.push_back({0.0, t1, [=](double t) {
                            return ControlPoint{
                                alpha_i, clamp_theta(pi / 2.0 * (1.0 - c * t / t1)),
                                0.0};
                          }});
  tr.segments_.push_back({t1, t1 + t2, [=](double) {
                            return ControlPoint{alpha_ii, pi / 2.0, q0};
                          }});
  tr.segments_.push_back(
      {t1 + t2, total, [=](double t) {
         return ControlPoint{
             alpha_i, clamp_theta(pi / 2.0 * (1.0 - c * (t - total) / t1)), 0.0};
       }});
  return tr;
}

Trajectory Trajectory::custom(std::vector<Segment> segments, double omega,
                              double q0, Chirality chi) {
  if (segments.empty()) throw DomainError("custom trajectory needs >= 1 segment");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    require(s.t_end > s.t_begin, "segment end", s.t_end, "(segment begin, inf)");
    if (i == 0) require(s.t_begin == 0.0, "first segment begin", s.t_begin, "{0}");
    if (i > 0) {
      require(s.t_begin == segments[i - 1].t_end, "segment begin", s.t_begin,
              "{previous segment end}");
    }
  }
  Trajectory tr;
  tr.kind_ = TrajectoryKind::custom;
  tr.omega_ = omega;
  tr.q0_ = q0;
  tr.chi_ = chi;
  tr.segments_ = std::move(segments);
  return tr;
}

std::vector<double> Trajectory::hop_times() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    out.push_back(segments_[i].t_begin);
  }
  return out;
}

ControlPoint Trajectory::at(double t) const {
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    if (t >= it->t_begin) return it->sampler(std::min(t, it->t_end));
  }
  return segments_.front().sampler(segments_.front().t_begin);
}

SystemParams Trajectory::params(const ControlPoint& c) const {
  return SystemParams::from_alpha(c.alpha, c.theta, c.q, omega_);
}

EvolutionResult integrate(const Trajectory& traj, const DensityMatrix& rho_i,
                          const IntegrateOptions& options) {
  if (options.steps_per_unit_time < 100) {
    throw std::invalid_argument(
        "steps_per_unit_time = " + std::to_string(options.steps_per_unit_time) +
        " is outside the valid range [100, inf)");
  }
  const double spu = static_cast<double>(options.steps_per_unit_time);

  std::vector<long> steps_per_segment;
  long total_steps = 0;
  for (const auto& seg : traj.segments()) {
    const long n = std::max<long>(
        1, static_cast<long>(std::ceil((seg.t_end - seg.t_begin) * spu - 1e-9)));
    steps_per_segment.push_back(n);
    total_steps += n;
  }
  const long stride =
      options.max_history_rows > 1
          ? std::max<long>(1, (total_steps + options.max_history_rows - 2) /
                                  (options.max_history_rows - 1))
          : 0;

  EvolutionResult result;
  auto& diag = result.diagnostics;
  Vec4 v = vectorize(rho_i).data();
  const auto initial = devectorize(LiouvilleVector(v));
  diag.min_state_eigenvalue = initial.min_eigenvalue();
  diag.max_hermiticity_deviation = initial.hermiticity_deviation();
  diag.max_trace = initial.trace();
  diag.max_trace_deviation_from_one = std::abs(initial.trace() - 1.0);

  auto record = [&](double t) {
    result.history.push_back(
        HistoryRow{t, (v(0) + v(3)).real(), v(0).real(), v(1), v(3).real()});
  };
  if (stride > 0) record(0.0);

  long global_step = 0;
  for (std::size_t si = 0; si < traj.segments().size(); ++si) {
    const auto& seg = traj.segments()[si];
    const long n = steps_per_segment[si];
    const double h = (seg.t_end - seg.t_begin) / static_cast<double>(n);
    auto generator = [&](double t) {
      return build_hybrid_liouvillian(traj.params(seg.sampler(t))).matrix();
    };
    Mat4 s0 = generator(seg.t_begin);
    for (long i = 0; i < n; ++i) {
      const double t = seg.t_begin + static_cast<double>(i) * h;
      const double t_next = i + 1 == n ? seg.t_end : t + h;
      const Mat4 sm = generator(t + 0.5 * h);
      const Mat4 s1 = generator(t_next);
      const Vec4 k1 = s0 * v;
      const Vec4 k2 = sm * (v + 0.5 * h * k1);
      const Vec4 k3 = sm * (v + 0.5 * h * k2);
      const Vec4 k4 = s1 * (v + h * k3);
      v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      s0 = s1;
      ++global_step;

      const double hs = h * sm.norm();
      diag.max_local_error =
          std::max(diag.max_local_error, std::pow(hs, 5) / 120.0);

      const auto rho = devectorize(LiouvilleVector(v));
      const double tr = rho.trace();
      const double herm = rho.hermiticity_deviation();
      if (!std::isfinite(tr) || tr > 1.0 + options.fault_trace_excess ||
          herm > options.fault_hermiticity) {
        std::ostringstream os;
        os << "integration fault at t = " << t_next << ": trace = " << tr
           << ", hermiticity deviation = " << herm
           << " (limits: trace <= 1 + " << options.fault_trace_excess
           << ", deviation <= " << options.fault_hermiticity
           << "); reduce the step size";
        throw IntegrationFault(os.str(), t_next);
      }
      diag.max_trace = std::max(diag.max_trace, tr);
      diag.max_hermiticity_deviation = std::max(diag.max_hermiticity_deviation, herm);
      diag.min_state_eigenvalue = std::min(diag.min_state_eigenvalue, rho.min_eigenvalue());
      diag.max_trace_deviation_from_one =
          std::max(diag.max_trace_deviation_from_one, std::abs(tr - 1.0));

      if (stride > 0 && (global_step % stride == 0 || global_step == total_steps)) {
        record(t_next);
      }
    }
  }
  diag.steps = total_steps;
  result.final_state = devectorize(LiouvilleVector(v));
  return result;
}

double fidelity(const DensityMatrix& rho, Chirality chi, bool normalized) {
  const DensityMatrix target = projector(
      chi == Chirality::plus ? BasisState::plus : BasisState::minus);
  const double raw = (rho.matrix() * target.matrix()).trace().real();
  if (!normalized) return raw;
  const double p = rho.trace();
  if (!(p > 0.0)) {
    throw UndefinedFidelity(
        "normalized fidelity is undefined for Tr rho(T) = " + std::to_string(p));
  }
  return raw / p;
}

double fidelity(const EvolutionResult& result, Chirality chi, bool normalized) {
  return fidelity(result.final_state, chi, normalized);
}

Trajectory make_protocol(TrajectoryKind kind, double q0, Chirality chi,
                         const ProtocolParams& p) {
  switch (kind) {
    case TrajectoryKind::tilted:
      return Trajectory::tilted(q0, chi, p.total_time, p.omega, p.alpha_max);
    case TrajectoryKind::flat:
      return Trajectory::flat(q0, chi, p.total_time, p.omega, p.alpha_max);
    case TrajectoryKind::hopping:
      return Trajectory::hopping(q0, chi, p.t1, p.t2, p.alpha_i, p.alpha_ii,
                                 p.omega);
    case TrajectoryKind::custom:
      break;
  }
  throw DomainError("kind 'custom' has no protocol parameters");
}

SweepRow evaluate_protocol(TrajectoryKind kind, double q0, Chirality chi,
                           const ProtocolParams& params,
                           const IntegrateOptions& options,
                           const DensityMatrix& initial) {
  const Trajectory traj = make_protocol(kind, q0, chi, params);
  IntegrateOptions opt = options;
  opt.max_history_rows = 0;
  const EvolutionResult res = integrate(traj, initial, opt);
  SweepRow row{kind, q0, chi, traj.total_time(), 0.0, 0.0, res.probability(), {}};
  row.f_raw = fidelity(res, chi, false);
  row.f_normalized = fidelity(res, chi, true);
  return row;
}

std::vector<SweepRow> sweep_q0(TrajectoryKind kind,
                               const std::vector<double>& q0_grid,
                               Chirality chi, const ProtocolParams& params,
                               const IntegrateOptions& options,
                               const DensityMatrix& initial, unsigned threads,
                               bool record_errors) {
  for (double q0 : q0_grid) {
    if (!(q0 >= 0.0 && q0 <= 1.0)) {
      throw SweepError("q0 = " + std::to_string(q0) +
                           " is outside the valid range [0, 1]",
                       q0);
    }
  }
  std::vector<SweepRow> rows(q0_grid.size());
  std::vector<std::exception_ptr> errors(q0_grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < q0_grid.size(); i = next++) {
      try {
        rows[i] = evaluate_protocol(kind, q0_grid[i], chi, params, options, initial);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, q0_grid.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      if (record_errors) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        const double total = kind == TrajectoryKind::hopping
                                 ? 2.0 * params.t1 + params.t2
                                 : params.total_time;
        rows[i] = SweepRow{kind, q0_grid[i], chi, total, nan, nan, nan, e.what()};
        if (rows[i].error.empty()) rows[i].error = "error";
        continue;
      }
      throw SweepError("q0 = " + std::to_string(q0_grid[i]) + ": " + e.what(),
                       q0_grid[i]);
    }
  }
  return rows;
}

std::vector<GapSample> eigenvalue_gaps(const Trajectory& traj, int samples) {
  std::vector<GapSample> out;
  if (samples <= 0) return out;
  const double total = traj.total_time();
  for (int i = 0; i < samples; ++i) {
    const double t = samples == 1 ? 0.0 : total * i / (samples - 1.0);
    const Mat4 s = build_hybrid_liouvillian(traj.params(traj.at(t))).matrix();
    const Eigen::ComplexEigenSolver<Mat4> es(s, false);
    double gap = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        gap = std::min(gap, std::abs(es.eigenvalues()(a) - es.eigenvalues()(b)));
      }
    }
    out.push_back({t, gap});
  }
  return out;
}

}  // namespace hlep
