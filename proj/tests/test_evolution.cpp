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

#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "hlep/evolution.hpp"

using namespace hlep;

namespace {

constexpr double T = 100.0;

ControlPoint constant(double alpha, double theta, double q) {
  return ControlPoint{alpha, theta, q};
}

}  // namespace

TEST_CASE("tilted trajectory samples") {
  const auto tr = Trajectory::tilted(0.6, Chirality::plus, T);
  const auto a = tr.at(0.0);
  CHECK(a.alpha == doctest::Approx(0.0));
  CHECK(a.theta == doctest::Approx(pi / 2));
  CHECK(a.q == doctest::Approx(0.0));
  const auto mid = tr.at(T / 2);
  CHECK(mid.alpha == doctest::Approx(3.0));
  CHECK(mid.theta == doctest::Approx(pi / 2));
  CHECK(mid.q == doctest::Approx(0.6));
  const auto quarter = tr.at(T / 4);
  CHECK(quarter.alpha == doctest::Approx(1.5));
  CHECK(quarter.theta == doctest::Approx(pi / 2 - 1.5));
  CHECK(quarter.q == doctest::Approx(0.3));
  CHECK(tr.hop_times().empty());
}

TEST_CASE("flat trajectory samples") {
  const auto tr = Trajectory::flat(0.6, Chirality::plus, T);
  CHECK(tr.at(0.0).q == doctest::Approx(0.6));
  CHECK(tr.at(0.0).alpha == doctest::Approx(0.0));
  CHECK(tr.at(T / 2).alpha == doctest::Approx(3.0));
  CHECK(tr.at(T / 2).q == doctest::Approx(0.6));

  const auto f = Trajectory::flat(0.0, Chirality::minus, T);
  const auto t = Trajectory::tilted(0.0, Chirality::minus, T);
  for (double s = 0.0; s <= T; s += 0.37) {
    CHECK(f.at(s).alpha == t.at(s).alpha);
    CHECK(f.at(s).theta == t.at(s).theta);
    CHECK(f.at(s).q == t.at(s).q);
  }
}

TEST_CASE("hopping trajectory segments") {
  const auto tr = Trajectory::hopping(0.4, Chirality::plus, 20.0, 60.0, 1e-5, 10.0);
  CHECK(tr.total_time() == doctest::Approx(100.0));
  CHECK(tr.at(0.0).theta == doctest::Approx(pi / 2));
  CHECK(tr.at(20.0 - 1e-9).theta == doctest::Approx(0.0).epsilon(1e-8));
  for (double t : {20.0, 35.0, 79.9}) {
    const auto c = tr.at(t);
    CHECK(c.alpha == 10.0);
    CHECK(c.theta == doctest::Approx(pi / 2));
    CHECK(c.q == 0.4);
  }
  CHECK(tr.at(100.0).theta == doctest::Approx(pi / 2));
  CHECK(tr.at(100.0).alpha == 1e-5);
  CHECK(tr.hop_times() == std::vector<double>{20.0, 80.0});
  const auto minus = Trajectory::hopping(0.4, Chirality::minus, 20.0, 60.0, 1e-5, 10.0);
  CHECK(minus.at(20.0 - 1e-9).theta == doctest::Approx(pi).epsilon(1e-8));
}

TEST_CASE("trajectory constructors validate") {
  CHECK_THROWS_AS(Trajectory::tilted(1.5, Chirality::plus, T), DomainError);
  CHECK_THROWS_AS(Trajectory::tilted(0.5, Chirality::plus, -1.0), DomainError);
  CHECK_THROWS_AS(Trajectory::hopping(0.5, Chirality::plus, 0.0, 60.0, 1e-5, 10.0), DomainError);
  CHECK_THROWS_AS(chirality_from_int(0), DomainError);
  CHECK(trajectory_kind_from_string("flat") == TrajectoryKind::flat);
  CHECK_THROWS_AS(trajectory_kind_from_string("round"), DomainError);
}

TEST_CASE("Hamiltonian eigenstate without dissipation is stationary") {
  const auto tr = Trajectory::custom({{0.0, 10.0, [](double) { return constant(0.0, pi / 2, 0.0); }}});
  const auto res = integrate(tr, projector(BasisState::plus));
  CHECK((res.final_state.matrix() - projector(BasisState::plus).matrix()).norm() < 1e-12);
  CHECK(res.probability() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pure relaxation reaches one half at ln 2") {
  const auto tr = Trajectory::custom(
      {{0.0, std::log(2.0), [](double) { return constant(0.5, 0.0, 1.0); }}});
  const auto res = integrate(tr, projector(BasisState::up));
  CHECK(std::abs(res.final_state(0, 0).real() - 0.5) <= 1e-9);
  CHECK(std::abs(res.final_state(1, 1).real() - 0.5) <= 1e-9);
  CHECK(std::abs(res.probability() - 1.0) <= 1e-12);
}

TEST_CASE("constant generator matches the matrix exponential") {
  struct Case {
    double alpha, theta, q;
  };
  for (const Case c : {Case{0.3, 0.7, 0.0}, Case{1.0, pi / 2, 0.0}, Case{2.0, 2.1, 0.5},
                       Case{1.2, 1.4647501268, 0.1338918213}, Case{0.8, 0.2, 1.0}}) {
    const double t_end = 3.7;
    const auto tr = Trajectory::custom(
        {{0.0, t_end, [c](double) { return constant(c.alpha, c.theta, c.q); }}});
    const auto rho = maximally_mixed();
    const auto res = integrate(tr, rho);
    const Mat4 s = build_hybrid_liouvillian(SystemParams::from_alpha(c.alpha, c.theta, c.q)).matrix();
    const Mat4 prop = (s * t_end).exp();
    const Vec4 expected = prop * vectorize(rho).data();
    CHECK((vectorize(res.final_state).data() - expected).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("piecewise-constant path is split exactly at the hop") {
  const auto tr = Trajectory::custom(
      {{0.0, 1.3, [](double) { return constant(0.4, 1.0, 0.2); }},
       {1.3, 2.9, [](double) { return constant(2.5, 2.0, 0.9); }}});
  const Mat4 s1 = build_hybrid_liouvillian(SystemParams::from_alpha(0.4, 1.0, 0.2)).matrix();
  const Mat4 s2 = build_hybrid_liouvillian(SystemParams::from_alpha(2.5, 2.0, 0.9)).matrix();
  const Vec4 expected = (s2 * 1.6).exp() * ((s1 * 1.3).exp() * vectorize(projector(BasisState::minus)).data());
  const auto res = integrate(tr, projector(BasisState::minus));
  CHECK((vectorize(res.final_state).data() - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("step density") {
  const auto tr = Trajectory::tilted(0.5, Chirality::plus, 10.0);
  IntegrateOptions o;
  o.steps_per_unit_time = 99;
  CHECK_THROWS_AS(integrate(tr, maximally_mixed(), o), std::invalid_argument);

  o.steps_per_unit_time = 1000;
  const auto a = integrate(tr, maximally_mixed(), o);
  o.steps_per_unit_time = 2000;
  const auto b = integrate(tr, maximally_mixed(), o);
  CHECK((a.final_state.matrix() - b.final_state.matrix()).norm() < 1e-10);
  CHECK(a.diagnostics.steps == 10000);
}

TEST_CASE("history is decimated and bounded") {
  const auto tr = Trajectory::flat(1.0, Chirality::plus, 100.0);
  IntegrateOptions o;
  o.max_history_rows = 500;
  const auto res = integrate(tr, maximally_mixed(), o);
  CHECK(res.history.size() <= 500);
  CHECK(res.history.size() >= 2);
  CHECK(res.history.front().t == 0.0);
  CHECK(res.history.back().t == doctest::Approx(100.0));
  for (const auto& h : res.history) CHECK(std::abs(h.trace - 1.0) < 1e-9);
  o.max_history_rows = 0;
  CHECK(integrate(tr, maximally_mixed(), o).history.empty());
}

TEST_CASE("fidelity examples") {
  CHECK(fidelity(projector(BasisState::plus), Chirality::plus) == doctest::Approx(1.0));
  CHECK(fidelity(projector(BasisState::plus), Chirality::minus) == doctest::Approx(0.0));
  CHECK(fidelity(maximally_mixed(), Chirality::plus) == doctest::Approx(0.5));
  CHECK(fidelity(maximally_mixed(), Chirality::minus) == doctest::Approx(0.5));
  const auto half = DensityMatrix::unchecked(0.5 * projector(BasisState::plus).matrix());
  CHECK(fidelity(half, Chirality::plus, true) == doctest::Approx(1.0));
  CHECK(fidelity(half, Chirality::plus, false) == doctest::Approx(0.5));
  CHECK_THROWS_AS(fidelity(DensityMatrix::unchecked(Mat2::Zero()), Chirality::plus, true),
                  UndefinedFidelity);
}

TEST_CASE("conservation along the protocols") {
  const ProtocolParams pp;
  for (auto kind : {TrajectoryKind::tilted, TrajectoryKind::flat, TrajectoryKind::hopping}) {
    for (double q0 : {0.0, 0.5, 1.0}) {
      const auto res = integrate(make_protocol(kind, q0, Chirality::plus, pp), maximally_mixed());
      CHECK(res.diagnostics.max_hermiticity_deviation <= 1e-8);
      CHECK(res.diagnostics.min_state_eigenvalue >= -1e-8);
      CHECK(res.diagnostics.max_trace <= 1.0 + 1e-9);
      if (kind == TrajectoryKind::flat && q0 == 1.0) {
        CHECK(res.diagnostics.max_trace_deviation_from_one <= 1e-9);
      }
    }
  }
}

TEST_CASE("tilted probability grows with q0") {
  const auto rows = sweep_q0(TrajectoryKind::tilted, {0.0, 0.25, 0.5, 0.75, 1.0},
                             Chirality::plus, ProtocolParams{});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].probability > rows[i - 1].probability);
}

TEST_CASE("sweep keeps grid order and reports bad input") {
  const std::vector<double> grid{1.0, 0.0, 0.5};
  const auto rows = sweep_q0(TrajectoryKind::flat, grid, Chirality::minus, ProtocolParams{});
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rows[i].q0 == grid[i]);
    CHECK(rows[i].chi == Chirality::minus);
    CHECK(rows[i].error.empty());
  }
  CHECK(std::abs(rows[0].probability - 1.0) <= 1e-6);

  const auto single = sweep_q0(TrajectoryKind::hopping, {0.3}, Chirality::plus, ProtocolParams{});
  CHECK(single.size() == 1);
  CHECK(single[0].total_time == doctest::Approx(100.0));

  CHECK_THROWS_AS(sweep_q0(TrajectoryKind::flat, {0.2, 1.2}, Chirality::plus, ProtocolParams{}),
                  SweepError);

  IntegrateOptions bad;
  bad.steps_per_unit_time = 10;
  CHECK_THROWS_AS(sweep_q0(TrajectoryKind::flat, {0.2}, Chirality::plus, ProtocolParams{}, bad),
                  SweepError);
  const auto recorded = sweep_q0(TrajectoryKind::flat, {0.2}, Chirality::plus, ProtocolParams{},
                                 bad, maximally_mixed(), 1, true);
  REQUIRE(recorded.size() == 1);
  CHECK_FALSE(recorded[0].error.empty());
  CHECK(std::isnan(recorded[0].f_normalized));
}

TEST_CASE("sweep is independent of the thread count") {
  const std::vector<double> grid{0.0, 0.3, 0.6, 0.9};
  const auto a = sweep_q0(TrajectoryKind::tilted, grid, Chirality::plus, ProtocolParams{}, {},
                          maximally_mixed(), 1);
  const auto b = sweep_q0(TrajectoryKind::tilted, grid, Chirality::plus, ProtocolParams{}, {},
                          maximally_mixed(), 3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(a[i].f_normalized == b[i].f_normalized);
    CHECK(a[i].probability == b[i].probability);
  }
}

TEST_CASE("eigenvalue gaps along a path") {
  const auto gaps = eigenvalue_gaps(Trajectory::tilted(0.0, Chirality::plus, T), 11);
  REQUIRE(gaps.size() == 11);
  CHECK(gaps.front().t == 0.0);
  CHECK(gaps.back().t == doctest::Approx(T));
  for (const auto& g : gaps) CHECK(g.min_gap >= 0.0);
}
