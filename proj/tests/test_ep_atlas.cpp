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
#include <random>

#include "hlep/ep_atlas.hpp"

using namespace hlep;

TEST_CASE("fourth-order point") {
  const auto p = fourth_order_point();
  CHECK(p.alpha == 1.0);
  CHECK(p.theta == doctest::Approx(pi / 2));
  CHECK(p.q == 0.0);
  const auto r = classify_degeneracy(SystemParams::from_alpha(p.alpha, p.theta, p.q));
  REQUIRE(r.size() == 1);
  CHECK(r[0].order == 4);
  CHECK(r[0].ep_order() == 3);
  CHECK(std::abs(r[0].eigenvalue + 1.0) < 1e-6);
}

TEST_CASE("third-order line endpoints") {
  const auto [a, b] = third_order_line(1.0);
  CHECK(a.theta == doctest::Approx(pi / 2));
  CHECK(b.theta == doctest::Approx(pi / 2));
  CHECK(a.q == doctest::Approx(0.0));

  const auto [c, d] = third_order_line(std::sqrt(3.0));
  CHECK(c.q == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.theta == doctest::Approx(0.5 * std::acos(-7.0 / 9.0)).epsilon(1e-12));
  CHECK(c.theta == doctest::Approx(1.2309594173).epsilon(1e-10));
  CHECK(d.theta == doctest::Approx(pi - c.theta));
}

TEST_CASE("third-order line at 1.2") {
  const auto [l1, l2] = third_order_line(1.2);
  CHECK(l1.theta == doctest::Approx(1.46475012684445).epsilon(1e-13));
  CHECK(l1.q == doctest::Approx(0.133891821258164).epsilon(1e-13));
  CHECK(l2.theta == doctest::Approx(pi - 1.46475012684445).epsilon(1e-13));
  CHECK(l1.branch == Branch::third_order_line_1);
  CHECK(l2.branch == Branch::third_order_line_2);
}

TEST_CASE("third-order line outside its window") {
  CHECK_THROWS_AS(third_order_line(0.99), DomainError);
  CHECK_THROWS_AS(third_order_line(1.8), DomainError);
  // The q formula has a pole near 3.732; the guard must fire first.
  CHECK_THROWS_AS(third_order_line(2.0 + std::sqrt(3.0)), DomainError);
}

TEST_CASE("eta examples") {
  for (double a : {1.0, 1.5, 2.0, 3.0}) {
    REQUIRE(eta(a, pi / 2).has_value());
    CHECK(*eta(a, pi / 2) == doctest::Approx(2 * (a * a - 1)));
  }
  CHECK(*eta(1.0, pi / 2) == doctest::Approx(0.0));
  CHECK(*eta(2.0, 1.4) == doctest::Approx(5.75922746000539).epsilon(1e-13));
  CHECK_FALSE(eta(1.2, 0.3).has_value());
}

TEST_CASE("second-order surface examples") {
  for (double a : {1.5, 2.0, 3.0}) {
    const auto s = second_order_surfaces(a, pi / 2);
    REQUIRE(s[1].valid);
    CHECK(s[1].q == doctest::Approx(0.0));
    CHECK(s[1].branch == Branch::trivial_line);
  }
  const auto r3 = second_order_surfaces(std::sqrt(3.0), pi / 2);
  REQUIRE(r3[0].valid);
  CHECK(r3[0].q == doctest::Approx(0.628539361054709).epsilon(1e-13));
  CHECK(r3[0].branch == Branch::surface_q1);

  const auto one = second_order_surfaces(1.0, pi / 2);
  CHECK(one[0].q == doctest::Approx(0.0));
  CHECK(one[1].q == doctest::Approx(0.0));

  const auto none = second_order_surfaces(1.2, 0.3);
  CHECK_FALSE(none[0].valid);
  CHECK_FALSE(none[1].valid);
  CHECK(std::isnan(none[0].q));
}

TEST_CASE("closed-form coefficients match the matrix") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double a = 3 * u(rng), t = pi * u(rng), q = u(rng);
    const auto cf = closed_form_char_poly(a, t, q);
    const auto c = char_poly(build_hybrid_liouvillian(SystemParams::from_alpha(a, t, q)));
    for (int i = 0; i < 5; ++i) CHECK(std::abs(c[i] - cf[i]) < 1e-12 * std::max(1.0, std::abs(cf[i])));
  }
}

TEST_CASE("surfaces are mirror symmetric in theta") {
  for (double a = 1.05; a < 3.5; a += 0.1) {
    for (double t = 0.05; t < pi / 2; t += 0.05) {
      const auto l = second_order_surfaces(a, t);
      const auto r = second_order_surfaces(a, pi - t);
      for (int i = 0; i < 2; ++i) {
        CHECK(l[i].valid == r[i].valid);
        if (l[i].valid) CHECK(l[i].q == doctest::Approx(r[i].q).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("surfaces meet the third-order lines") {
  // Along (alpha, theta_1(alpha)) one surface branch reaches q_line(alpha).
  for (double a = 1.02; a < std::sqrt(3.0); a += 0.05) {
    const auto [l1, l2] = third_order_line(a);
    double best = 1.0;
    for (double t : {l1.theta, l2.theta}) {
      for (const auto& p : second_order_surfaces(a, t)) {
        if (p.valid) best = std::min(best, std::abs(p.q - l1.q));
      }
    }
    CHECK(best < 1e-6);
  }
}

TEST_CASE("surface points are degenerate") {
  for (const auto& p : sample_surfaces(50)) {
    const auto c = closed_form_char_poly(p.alpha, p.theta, p.q);
    const auto r = classify_degeneracy(SystemParams::from_alpha(p.alpha, p.theta, p.q));
    REQUIRE_FALSE(r.empty());
    const double lam = r[0].eigenvalue.real();
    double v = 0, dv = 0;
    for (int j = 4; j >= 0; --j) {
      dv = dv * lam + v;
      v = v * lam + c[j];
    }
    CHECK(std::abs(v) < 1e-9);
    CHECK(std::abs(dv) < 1e-6);
  }
}

TEST_CASE("scan: two third-order solutions at alpha = 1.2") {
  const ScanGrid grid{{1.2, 1.2, 1}, {0.05, pi - 0.05, 12}, {0.0, 1.0, 6}};
  const auto res = scan_numeric(grid, 3);
  REQUIRE(res.records.size() == 2);
  const auto [l1, l2] = third_order_line(1.2);
  for (const auto& r : res.records) {
    const double d1 = std::hypot(r.theta - l1.theta, r.q - l1.q);
    const double d2 = std::hypot(r.theta - l2.theta, r.q - l2.q);
    CHECK(std::min(d1, d2) <= 1e-6);
    CHECK(r.ep_order() == 3);
  }
}

TEST_CASE("scan: exactly one fourth-order degeneracy") {
  const ScanGrid grid{{0.1, 3.0, 8}, {0.05, pi - 0.05, 8}, {0.0, 1.0, 5}};
  const auto res = scan_numeric(grid, 4);
  REQUIRE(res.records.size() == 1);
  const auto& r = res.records[0];
  CHECK(std::abs(r.alpha - 1.0) < 1e-6);
  CHECK(std::abs(r.theta - pi / 2) < 1e-6);
  CHECK(std::abs(r.q) < 1e-6);
  CHECK(r.order == 4);
  CHECK(r.ep_order() == 3);
}

TEST_CASE("scan: equator slice gives the trivial line and the q1 surface") {
  const ScanGrid grid{{1.5, 3.0, 4}, {pi / 2, pi / 2, 1}, {0.0, 1.0, 21}};
  const auto res = scan_numeric(grid, 2);
  int trivial = 0, surface = 0;
  for (const auto& r : res.records) {
    if (r.q < 1e-6) {
      CHECK(r.kind == DegeneracyKind::trivial);
      ++trivial;
    } else {
      const auto s = second_order_surfaces(r.alpha, pi / 2);
      CHECK(std::abs(r.q - s[0].q) < 1e-6);
      CHECK(r.ep_order() == 2);
      ++surface;
    }
  }
  CHECK(trivial == 4);
  CHECK(surface >= 2);  // q1 leaves [0, 1] for larger alpha
  CHECK(cross_validate(grid, 2, res).passed());
}

TEST_CASE("scan: third-order solutions come in mirror pairs") {
  const ScanGrid grid{{1.1, 1.7, 4}, {0.05, pi - 0.05, 12}, {0.0, 1.0, 6}};
  const auto res = scan_numeric(grid, 3);
  CHECK(res.records.size() == 8);
  for (const auto& r : res.records) {
    const bool mirrored = std::any_of(res.records.begin(), res.records.end(), [&](const auto& o) {
      return std::abs(o.alpha - r.alpha) < 1e-9 && std::abs(o.theta - (pi - r.theta)) < 1e-6 &&
             std::abs(o.q - r.q) < 1e-6;
    });
    CHECK(mirrored);
  }
  CHECK(cross_validate(grid, 3, res).passed());
}

TEST_CASE("scan input validation") {
  const ScanGrid bad_q{{1, 2, 2}, {0.1, 1, 2}, {0, 1.5, 2}};
  CHECK_THROWS_AS(scan_numeric(bad_q, 2), DomainError);
  const ScanGrid ok{{1, 2, 2}, {0.1, 1, 2}, {0, 1, 2}};
  CHECK_THROWS_AS(scan_numeric(ok, 5), std::invalid_argument);
  const ScanGrid empty{{1, 2, 0}, {0.1, 1, 2}, {0, 1, 2}};
  const auto res = scan_numeric(empty, 2);
  CHECK(res.records.empty());
  CHECK(res.cells == 0);
}

TEST_CASE("scan output does not depend on the thread count") {
  const ScanGrid grid{{0.5, 2.5, 6}, {0.2, 2.9, 6}, {0.0, 1.0, 5}};
  ScanOptions one;
  one.threads = 1;
  ScanOptions four;
  four.threads = 4;
  const auto a = scan_numeric(grid, 2, one);
  const auto b = scan_numeric(grid, 2, four);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].alpha == b.records[i].alpha);
    CHECK(a.records[i].theta == b.records[i].theta);
    CHECK(a.records[i].q == b.records[i].q);
  }
}

TEST_CASE("validate_atlas with 100 samples") {
  const auto rep = validate_atlas(100);
  CHECK(rep.passed());
  for (const auto& b : rep.branches) {
    CHECK(b.ill_conditioned == 0);
    CHECK(b.max_residual <= 1e-9);
  }
  CHECK(rep.branches[0].samples == 100);
  CHECK(rep.branches[1].samples == 100);
  CHECK(rep.branches[2].samples == 100);
  CHECK_THROWS_AS(validate_atlas(0), DomainError);
}

TEST_CASE("branch names") {
  CHECK(to_string(Branch::third_order_line_1) == "third-order-line-1");
  CHECK(to_string(Branch::surface_q2) == "surface-q2");
  CHECK(to_string(Branch::trivial_line) == "trivial-line");
}
