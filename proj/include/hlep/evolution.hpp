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

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlep/core.hpp"
#include "hlep/liouvillian.hpp"

namespace hlep {

enum class TrajectoryKind { tilted, flat, hopping, custom };

std::string to_string(TrajectoryKind k);
TrajectoryKind trajectory_kind_from_string(const std::string& name);

/// Winding direction; the target state is |+> for plus and |-> for minus.
enum class Chirality : int { plus = 1, minus = -1 };

Chirality chirality_from_int(int chi);

struct ControlPoint {
  double alpha = 0.0;
  double theta = 0.0;
  double q = 0.0;
};

/// A closed path through (alpha, theta, q) over t in [0, T].
///
/// The path is a sequence of segments; each segment's sampler is continuous
/// on its closed interval, and parameters may jump between segments.
class Trajectory {
 public:
  struct Segment {
    double t_begin;
    double t_end;
    std::function<ControlPoint(double)> sampler;
  };

  /// alpha = alpha_max sin^2(pi t/T), q = q0 sin^2(pi t/T),
  /// theta = pi/2 - (3/2) sin(2 pi chi t / T).
  static Trajectory tilted(double q0, Chirality chi, double total_time,
                           double omega = 1.0, double alpha_max = 3.0);
  /// As tilted, but q = q0 throughout.
  static Trajectory flat(double q0, Chirality chi, double total_time,
                         double omega = 1.0, double alpha_max = 3.0);
  /// Three segments: rotation at alpha_i and q = 0 for t in [0, T1), a fixed
  /// point (alpha_ii, pi/2, q0) for T2, and the return rotation. T = 2 T1 + T2.
  static Trajectory hopping(double q0, Chirality chi, double t1, double t2,
                            double alpha_i, double alpha_ii,
                            double omega = 1.0);
  static Trajectory custom(std::vector<Segment> segments, double omega = 1.0,
                           double q0 = 0.0, Chirality chi = Chirality::plus);

  TrajectoryKind kind() const { return kind_; }
  double q0() const { return q0_; }
  Chirality chi() const { return chi_; }
  double total_time() const { return segments_.back().t_end; }
  double omega() const { return omega_; }
  double t1() const { return t1_; }
  double t2() const { return t2_; }
  double alpha_i() const { return alpha_i_; }
  double alpha_ii() const { return alpha_ii_; }
  double alpha_max() const { return alpha_max_; }

  const std::vector<Segment>& segments() const { return segments_; }
  /// Times at which the parameters jump (segment boundaries).
  std::vector<double> hop_times() const;

  /// Right-continuous sampling: at a hop time the later segment is used;
  /// t = T uses the last segment.
  ControlPoint at(double t) const;

  /// gamma = 2 omega alpha.
  SystemParams params(const ControlPoint& c) const;

 private:
  Trajectory() = default;

  TrajectoryKind kind_ = TrajectoryKind::custom;
  double q0_ = 0.0;
  Chirality chi_ = Chirality::plus;
  double omega_ = 1.0;
  double t1_ = 0.0;
  double t2_ = 0.0;
  double alpha_i_ = 0.0;
  double alpha_ii_ = 0.0;
  double alpha_max_ = 3.0;
  std::vector<Segment> segments_;
};

class IntegrationFault : public std::runtime_error {
 public:
  IntegrationFault(const std::string& what, double t)
      : std::runtime_error(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

class UndefinedFidelity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct IntegrateOptions {
  /// Fixed RK4 step density; must be >= 100.
  int steps_per_unit_time = 1000;
  /// History is decimated to at most this many rows; 0 disables it.
  int max_history_rows = 10000;
  double fault_trace_excess = 1e-6;
  double fault_hermiticity = 1e-6;
};

struct HistoryRow {
  double t;
  double trace;
  double rho_uu;
  cplx rho_ud;
  double rho_dd;
};

struct StepDiagnostics {
  long steps = 0;
  /// Max over steps of (h ||S||_F)^5 / 120: the leading Taylor term RK4
  /// drops for a frozen generator, relative to ||v||.
  double max_local_error = 0.0;
  double max_hermiticity_deviation = 0.0;
  double min_state_eigenvalue = 0.0;
  double max_trace = 0.0;
  /// max |trace - 1| over all steps (meaningful when q == 1 throughout).
  double max_trace_deviation_from_one = 0.0;
};

struct EvolutionResult {
  DensityMatrix final_state = DensityMatrix::unchecked(Mat2::Zero());
  std::vector<HistoryRow> history;
  StepDiagnostics diagnostics;

  /// Postselection probability Tr rho(T).
  double probability() const { return final_state.trace(); }
};

/// Fixed-step classical RK4 on v' = S(t) v, split exactly at hop times.
/// Throws std::invalid_argument for steps_per_unit_time < 100 and
/// IntegrationFault when the trace exceeds 1 + 1e-6 or the state drifts
/// from Hermiticity by more than 1e-6.
EvolutionResult integrate(const Trajectory& traj, const DensityMatrix& rho_i,
                          const IntegrateOptions& options = {});

/// Tr[rho(T) rho_chi], divided by Tr rho(T) when `normalized`.
double fidelity(const EvolutionResult& result, Chirality chi,
                bool normalized = true);
double fidelity(const DensityMatrix& rho, Chirality chi, bool normalized = true);

/// Protocol parameters shared by the three families.
struct ProtocolParams {
  double total_time = 100.0;
  double t1 = 20.0;
  double t2 = 60.0;
  double alpha_i = 1e-5;
  double alpha_ii = 10.0;
  double alpha_max = 3.0;
  double omega = 1.0;
};

Trajectory make_protocol(TrajectoryKind kind, double q0, Chirality chi,
                         const ProtocolParams& params);

struct SweepRow {
  TrajectoryKind kind;
  double q0;
  Chirality chi;
  double total_time;
  double f_normalized;
  double f_raw;
  double probability;
  std::string error;  // empty on success
};

/// One integration for a single protocol point.
SweepRow evaluate_protocol(TrajectoryKind kind, double q0, Chirality chi,
                           const ProtocolParams& params,
                           const IntegrateOptions& options,
                           const DensityMatrix& initial);

class SweepError : public std::runtime_error {
 public:
  SweepError(const std::string& what, double q0)
      : std::runtime_error(what), q0_(q0) {}
  double q0() const { return q0_; }

 private:
  double q0_;
};

/// Evaluates every q0 in the grid (in parallel when threads != 1) and
/// returns rows in grid order. The first failing point is rethrown as
/// SweepError unless `record_errors` is set, in which case the failure is
/// kept in that row's `error` field with NaN metrics.
std::vector<SweepRow> sweep_q0(TrajectoryKind kind,
                               const std::vector<double>& q0_grid,
                               Chirality chi, const ProtocolParams& params,
                               const IntegrateOptions& options = {},
                               const DensityMatrix& initial = maximally_mixed(),
                               unsigned threads = 0, bool record_errors = false);

struct GapSample {
  double t;
  double min_gap;
};

/// Smallest pairwise eigenvalue distance of the generator along the path.
std::vector<GapSample> eigenvalue_gaps(const Trajectory& traj, int samples);

}  // namespace hlep
