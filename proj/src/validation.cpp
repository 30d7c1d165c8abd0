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

#include "hlep/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hlep/ep_atlas.hpp"
#include "hlep/evolution.hpp"
#include "hlep/spectral.hpp"

namespace hlep {

bool ValidationReport::passed() const {
  return !suites.empty() &&
         std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult& s) { return s.passed; });
}

const SuiteResult* ValidationReport::find(const std::string& name) const {
  for (const auto& s : suites) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

struct RandomInputs {
  explicit RandomInputs(std::uint64_t seed) : rng(seed) {}

  SystemParams params() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return SystemParams(3.0 * u(rng), pi * u(rng), 5.0 * u(rng), u(rng));
  }

  DensityMatrix state() {
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    Mat2 a;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) a(i, j) = cplx(n(rng), n(rng));
    }
    Mat2 rho = a * a.adjoint();
    rho *= u(rng) / rho.trace().real();
    return DensityMatrix::unchecked(rho);
  }

  std::mt19937_64 rng;
};

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

SuiteResult two_path(const ValidationOptions& opt, const SuperoperatorBuilder& build) {
  RandomInputs in(opt.seed);
  double max_diff = 0.0;
  double max_trace_law = 0.0;
  for (int i = 0; i < opt.random_samples; ++i) {
    const SystemParams p = in.params();
    const DensityMatrix rho = in.state();
    const Vec4 via_matrix = build(p).apply(vectorize(rho)).data();
    const Mat2 d = apply_generator(p, rho);
    const Vec4 via_operator = vectorize(d).data();
    max_diff = std::max(max_diff, (via_matrix - via_operator).cwiseAbs().maxCoeff());
    // d/dt Tr rho = -gamma (1 - q) rho_uu.
    const cplx law = via_matrix(0) + via_matrix(3) +
                     p.gamma() * (1.0 - p.q()) * rho.matrix()(0, 0);
    max_trace_law = std::max(max_trace_law, std::abs(law));
  }
  SuiteResult r{"liouvillian-two-path", max_diff <= 1e-12 && max_trace_law <= 1e-12,
                "max |S vec(rho) - vec(L rho)| = " + sci(max_diff) +
                    ", max trace-law residual = " + sci(max_trace_law) + " over " +
                    std::to_string(opt.random_samples) + " inputs"};
  return r;
}

SuiteResult spectral(const ValidationOptions& opt, const SuperoperatorBuilder& build) {
  RandomInputs in(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  double max_root = 0.0;
  double max_closed = 0.0;
  double max_conj = 0.0;
  const int n = std::max(1, opt.random_samples / 5);
  for (int i = 0; i < n; ++i) {
    SystemParams p = in.params();
    p = SystemParams(1.0, p.theta(), p.gamma(), p.q());
    const Mat4 s = build(p).matrix();
    const double norm = std::max(1.0, s.norm());
    const CharPoly c = char_poly(s);
    const SpectralData sd = eigendecompose(Superoperator(s), 1e-4 * norm, opt.rank_tol);
    for (const cplx& lam : sd.eigenvalues) {
      max_root = std::max(max_root,
                          std::abs(poly_derivative_at(c, lam, 0)) / std::pow(norm, 4));
      double nearest = std::numeric_limits<double>::infinity();
      for (const cplx& mu : sd.eigenvalues) {
        nearest = std::min(nearest, std::abs(mu - std::conj(lam)));
      }
      max_conj = std::max(max_conj, nearest / norm);
    }
    const auto cf = closed_form_char_poly(p.alpha(), p.theta(), p.q());
    for (int k = 0; k < 5; ++k) {
      max_closed = std::max(max_closed, std::abs(c[static_cast<std::size_t>(k)] -
                                                 cf[static_cast<std::size_t>(k)]) /
                                            std::pow(norm, 4 - k));
    }
  }
  const bool ok = max_root <= 1e-9 && max_closed <= 1e-12 && max_conj <= 1e-6;
  return SuiteResult{"spectral-consistency", ok,
                     "max |C(lambda)|/||S||^4 = " + sci(max_root) +
                         ", closed-form coefficient gap = " + sci(max_closed) +
                         ", conjugation gap = " + sci(max_conj)};
}

SuiteResult atlas(const ValidationOptions& opt) {
  const AtlasValidationReport rep = validate_atlas(opt.atlas_samples, opt.rank_tol);
  std::ostringstream os;
  int flags = 0;
  double residual = 0.0;
  for (const auto& b : rep.branches) {
    os << to_string(b.branch) << ' ' << b.agreeing << '/' << b.samples << ' '
       << b.expected;
    if (b.ill_conditioned) os << " (" << b.ill_conditioned << " flagged)";
    os << "; ";
    flags += b.ill_conditioned;
    residual = std::max(residual, b.max_residual);
  }
  os << "classification flags = " << flags << ", max residual = " << sci(residual);
  return SuiteResult{"atlas-cross-validation", rep.passed() && flags == 0, os.str()};
}

SuiteResult conservation(const ValidationOptions& opt) {
  IntegrateOptions io;
  io.steps_per_unit_time = opt.steps_per_unit_time;
  io.max_history_rows = 0;
  const ProtocolParams pp;
  double herm = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  double trace_dev = 0.0;
  for (auto kind : {TrajectoryKind::tilted, TrajectoryKind::flat, TrajectoryKind::hopping}) {
    for (double q0 : {0.0, 0.5, 1.0}) {
      const auto traj = make_protocol(kind, q0, Chirality::plus, pp);
      const auto res = integrate(traj, maximally_mixed(), io);
      herm = std::max(herm, res.diagnostics.max_hermiticity_deviation);
      min_eig = std::min(min_eig, res.diagnostics.min_state_eigenvalue);
      if (kind == TrajectoryKind::flat && q0 == 1.0) {
        trace_dev = std::max(trace_dev, res.diagnostics.max_trace_deviation_from_one);
      }
    }
  }
  // theta = 0, omega = gamma = 1, q = 1 from |up>: rho_uu(t) = exp(-t).
  const auto relax = Trajectory::custom(
      {{0.0, std::log(2.0), [](double) { return ControlPoint{0.5, 0.0, 1.0}; }}}, 1.0);
  const auto rr = integrate(relax, projector(BasisState::up), io);
  const double relax_err = std::abs(rr.final_state.matrix()(0, 0).real() - 0.5);

  const bool ok = herm <= 1e-8 && min_eig >= -1e-8 && trace_dev <= 1e-9 &&
                  relax_err <= 1e-9;
  return SuiteResult{"evolution-conservation", ok,
                     "max Hermiticity deviation = " + sci(herm) +
                         ", min eigenvalue = " + sci(min_eig) +
                         ", max |Tr rho - 1| at q = 1 = " + sci(trace_dev) +
                         ", relaxation error = " + sci(relax_err)};
}

}  // namespace

ValidationReport run_validation(const ValidationOptions& options) {
  if (options.random_samples < 1) {
    throw DomainError("random_samples must be in [1, inf)");
  }
  const SuperoperatorBuilder build =
      options.builder ? options.builder
                      : SuperoperatorBuilder([](const SystemParams& p) {
                          return build_hybrid_liouvillian(p);
                        });
  ValidationReport report;
  report.suites.push_back(two_path(options, build));
  report.suites.push_back(spectral(options, build));
  report.suites.push_back(atlas(options));
  if (options.include_evolution) report.suites.push_back(conservation(options));
  return report;
}

}  // namespace hlep
