#include <cmath>
#include <random>

#include "doctest.h"
#include "hvl/criterion.hpp"
#include "test_helpers.hpp"

using namespace hvl;
using namespace testing;

TEST_CASE("level bound") {
  CHECK(level_bound(2, 4) == 4);
  CHECK(level_bound(3, 2) == 4);
  CHECK(level_bound(1, 2) == 2);
  CHECK(level_bound(1, 7) == 5);
}

TEST_CASE("config validation") {
  CriterionConfig cfg;
  cfg.grid_size = 1000;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg.grid_size = 512;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg.grid_size = 2048;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("example1 phase is linear") {
  const auto map = example1();
  const auto table = unwrap_arg_H(map.h(), 1024);
  CHECK(table.winding() == 0);
  CHECK(table.min_modulus() == doctest::Approx(2.0));
  for (double t = -M_PI; t < M_PI; t += 0.37) {
    CHECK(std::abs(eval_F(map.h(), 4, t, table) - 7 * t) < 1e-12);
    CHECK(eval_F_prime(map.h(), 4, t) == doctest::Approx(7.0));
  }
}

TEST_CASE("example2 hand values") {
  const auto map = example2();
  const auto table = unwrap_arg_H(map.h(), 8192);
  const double a = std::atan(1.0 / 3.0);
  CHECK(eval_F(map.h(), 2, 0.0, table) == doctest::Approx(2 * a).epsilon(1e-13));
  CHECK(eval_F(map.h(), 2, -M_PI, table) == doctest::Approx(-7 * M_PI - 2 * a).epsilon(1e-13));
  CHECK(eval_F(map.h(), 2, M_PI, table) == doctest::Approx(7 * M_PI - 2 * a).epsilon(1e-13));
  CHECK(eval_F_prime(map.h(), 2, 0.0) == doctest::Approx(7.2).epsilon(1e-13));
  // H = 3 + i e^{it} has positive real part, so the principal value is
  // continuous and equals the unwrapped phase everywhere.
  for (const auto& s : table.samples()) {
    const cplx H = 3.0 + cplx(0.0, 1.0) * std::polar(1.0, s.t);
    CHECK(std::abs(s.phase - std::arg(H)) < 1e-14);
  }
}

TEST_CASE("phase table increments stay below pi/2") {
  // H = 1 + 0.95 z^6 turns quickly near the unit circle.
  const auto spec = FunctionSpec::poly_series(1, {1.0, 0.0, 0.0, 0.0, 0.0, 0.95 / 6});
  const auto table = unwrap_arg_H(spec, 1024);
  const auto& s = table.samples();
  CHECK(s.front().t == -M_PI);
  CHECK(s.back().t == M_PI);
  for (std::size_t i = 1; i < s.size(); ++i) {
    CHECK(s[i].t > s[i - 1].t);
    CHECK(std::abs(s[i].phase - s[i - 1].phase) < M_PI / 2);
    CHECK(std::abs(std::remainder(s[i].phase - std::arg(s[i].H), 2 * M_PI)) < 1e-12);
  }
  CHECK(table.winding() == 0);
}

TEST_CASE("hypothesis failures") {
  CHECK_THROWS_AS(unwrap_arg_H(star().h(), 1024), HypothesisError);
  // h = z - z^2 / 2: h'(1) = 0.
  const auto spec = FunctionSpec::poly_series(1, {1.0, -0.5});
  CHECK_THROWS_AS(unwrap_arg_H(spec, 1024), HypothesisError);
  const auto rep = check_theorem1(star().h(), 2);
  CHECK_FALSE(rep.hypotheses_hold);
  CHECK_FALSE(rep.theorem_applies);
  CHECK_FALSE(rep.notes.empty());
}

TEST_CASE("interior zero of H") {
  // h = z + 5 z^2 / 2: H = 1 + 5z vanishes at -1/5.
  const auto spec = FunctionSpec::poly_series(1, {1.0, 2.5});
  const auto table = unwrap_arg_H(spec, 1024);
  CHECK(table.winding() == 1);
  const auto rep = check_theorem1(spec, 2);
  CHECK_FALSE(rep.h_nonvanishing);
  CHECK_FALSE(rep.theorem_applies);
  CHECK_FALSE(rep.remark_margin.has_value());
  try {
    check_remark_condition(spec, 2);
    FAIL("no PoleError");
  } catch (const PoleError& e) {
    CHECK(std::abs(e.location() - cplx(-0.2, 0.0)) < 1e-12);
  }
}

TEST_CASE("example1 roots at 2 pi k / 7") {
  const auto rep = check_theorem1(example1().h(), 4);
  CHECK(rep.theorem_applies);
  REQUIRE(rep.total_roots == 7);
  for (const auto& r : rep.roots) {
    CHECK(std::abs(r.t - 2 * M_PI * r.k / 7) < 1e-10);
    CHECK(std::abs(r.f_value_at_root) == doctest::Approx(1.4).epsilon(1e-12));
  }
  for (std::size_t i = 1; i < rep.roots.size(); ++i) CHECK(rep.roots[i].t > rep.roots[i - 1].t);
  CHECK(rep.remark_margin.value() == doctest::Approx(3.5));
}

TEST_CASE("example2 roots") {
  const auto map = example2();
  const auto rep = check_theorem1(map.h(), 2);
  CHECK(rep.theorem_applies);
  CHECK(rep.total_roots == 7);
  for (int k = -3; k <= 3; ++k) CHECK(rep.per_k_counts.at(k) == 1);
  CHECK(rep.per_k_counts.at(4) == 0);
  CHECK(rep.per_k_counts.at(-4) == 0);
  CHECK(rep.remark_margin.value() == doctest::Approx(3.0).epsilon(1e-5));
  const auto table = unwrap_arg_H(map.h(), 8192);
  for (const auto& r : rep.roots) {
    CHECK(std::abs(eval_F(map.h(), 2, r.t, table) - 2 * M_PI * r.k) < 1e-9);
  }
}

TEST_CASE("F' matches finite differences") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-M_PI + 0.01, M_PI - 0.01);
  const double d = 1e-6;
  for (const auto& map : {example1(), example2()}) {
    const auto table = unwrap_arg_H(map.h(), 8192);
    for (int i = 0; i < 100; ++i) {
      const double t = u(rng);
      const double fd =
          (eval_F(map.h(), map.m(), t + d, table) - eval_F(map.h(), map.m(), t - d, table)) /
          (2 * d);
      const double exact = eval_F_prime(map.h(), map.m(), t);
      CHECK(std::abs(fd - exact) <= 1e-6 * std::abs(exact));
    }
  }
}

TEST_CASE("single levels") {
  const auto map = example2();
  const auto table = unwrap_arg_H(map.h(), 4096);
  CriterionConfig cfg;
  cfg.grid_size = 4096;
  const auto roots = find_level_roots(map.h(), 2, table, {0}, cfg);
  REQUIRE(roots.size() == 1);
  // F(0) = 2 atan(1/3) > 0 and F' > 0, so the k = 0 root lies at t < 0.
  CHECK(roots[0].t < 0.0);
  CHECK(find_level_roots(map.h(), 2, table, {5}, cfg).empty());
}

TEST_CASE("property: positive margin means one root per level and 2p+m-1 in total") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int tested = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int p = 1 + trial % 3;
    const int m = 2 + trial % 4;
    const double bound = p - 2.0 * p / (2.0 * p + m + 1.0);
    const cplx c = 0.9 * bound * cplx(u(rng), u(rng)) / std::sqrt(2.0);
    const auto spec = FunctionSpec::poly_series(p, {1.0, c / double(p + 1)});
    double margin = 0.0;
    try {
      margin = check_remark_condition(spec, m);
    } catch (const PoleError&) {
      continue;
    }
    if (margin <= 0.0) continue;
    ++tested;
    const auto rep = check_theorem1(spec, m);
    CHECK(rep.theorem_applies);
    CHECK(rep.total_roots == 2 * p + m - 1);
    for (const auto& [k, n] : rep.per_k_counts) CHECK(n <= 1);
  }
  CHECK(tested > 20);
}

TEST_CASE("a stationary crossing is still one root") {
  // p = 1, m = 3, H = 1 + i a z, a = 2/3: F is non-decreasing with F' = 0 and
  // F = 2 pi at t = pi/2, so the level is crossed once.
  const double a = 2.0 / 3.0;
  const auto spec = FunctionSpec::poly_series(1, {1.0, cplx(0.0, a / 2)});
  const auto rep = check_theorem1(spec, 3);
  CHECK(rep.per_k_counts.at(1) == 1);
  CHECK(rep.total_roots == 4);
}

TEST_CASE("grazing levels void the criterion") {
  // p = 1, m = 2, H = 1 + a e^{i theta} z: F(t) = F0(t + theta) - 3 theta with
  // F0(s) = 3s + 2 arg(1 + a e^{is}). F0 has a local maximum where
  // cos s = -(3 + 5a^2) / (8a); theta moves that maximum to 4 pi - gap, which
  // after wrapping t into [-pi, pi) is the level -2 pi.
  const double a = 0.8;
  const double s_star = std::acos(-(3 + 5 * a * a) / (8 * a));
  const double peak = 3 * s_star + 2 * std::arg(1.0 + std::polar(a, s_star));
  for (double gap : {0.0, 3e-9}) {
    CAPTURE(gap);
    const double theta = (peak - 4 * M_PI + gap) / 3;
    const auto spec = FunctionSpec::poly_series(1, {1.0, std::polar(a, theta) / 2.0});
    const auto rep = check_theorem1(spec, 2);
    CHECK_FALSE(rep.theorem_applies);
    CHECK(rep.per_k_counts.at(-1) >= 1);
    if (gap > 0.0) {
      CHECK(rep.any_tangency);
      int flagged = 0;
      for (const auto& r : rep.roots) {
        if (!r.suspected_tangency) continue;
        ++flagged;
        CHECK(r.k == -1);
        CHECK(std::abs(std::remainder(r.t - (s_star - theta), 2 * M_PI)) < 1e-5);
      }
      CHECK(flagged == 1);
    }
  }
}
