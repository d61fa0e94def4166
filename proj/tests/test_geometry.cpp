#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hvl/geometry.hpp"
#include "test_helpers.hpp"

using namespace hvl;
using namespace testing;

TEST_CASE("trace validation and layout") {
  const auto map = example1();
  CHECK_THROWS_AS(trace_circle(map, 1.5, 512), DomainError);
  CHECK_THROWS_AS(trace_circle(map, 0.0, 512), DomainError);
  CHECK_THROWS_AS(trace_circle(map, 1.0, 100), ParameterError);
  const auto tr = trace_circle(map, 1.0, 4096);
  REQUIRE(tr.size() == 4096);
  CHECK(tr.t.front() == -M_PI);
  CHECK(tr.phi_prime.size() == 4096);
  CHECK(tr.phi_second.size() == 4096);
  const auto inner = trace_circle(map, 0.5, 256);
  CHECK(inner.phi_prime.empty());
}

TEST_CASE("trace CSV") {
  const auto tr = trace_circle(example1(), 1.0, 256);
  std::ostringstream os;
  write_trace_csv(tr, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,re_f,im_f,clamped");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 256);
}

TEST_CASE("example1 trace has 7-fold rotational structure") {
  // f(e^{i(t + 2pi/7)}) = e^{4 pi i / 7} f(e^{it}).
  const auto map = example1();
  const cplx rot = std::polar(1.0, 4 * M_PI / 7);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int i = 0; i < 50; ++i) {
    const double t = u(rng);
    const cplx a = eval_f(map, std::polar(1.0, t + 2 * M_PI / 7));
    const cplx b = rot * eval_f(map, std::polar(1.0, t));
    CHECK(std::abs(a - b) < 1e-13);
  }
}

TEST_CASE("phi' and phi'' hand values and finite differences") {
  const auto map1 = example1();
  CHECK(std::abs(eval_phi_second(map1, 0.0) - cplx(-14.0, 0.0)) < 1e-13);
  CHECK(std::abs(eval_phi_prime(map1, 0.0)) < 1e-14);
  const double d = 1e-5;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (const auto& map : {example1(), example2()}) {
    for (int i = 0; i < 50; ++i) {
      const double t = u(rng);
      const auto phi = [&](double s) { return eval_f(map, std::polar(1.0, s)); };
      const cplx fd1 = (phi(t + d) - phi(t - d)) / (2 * d);
      const cplx p1 = eval_phi_prime(map, t);
      CHECK(std::abs(fd1 - p1) <= 1e-6 * std::max(1.0, std::abs(p1)));
      const cplx fd2 = (eval_phi_prime(map, t + d) - eval_phi_prime(map, t - d)) / (2 * d);
      const cplx p2 = eval_phi_second(map, t);
      CHECK(std::abs(fd2 - p2) <= 1e-6 * std::max(1.0, std::abs(p2)));
    }
  }
}

TEST_CASE("concavity for the polynomial presets") {
  for (const auto& map : {example1(), example2()}) {
    const auto rep = concavity_check(map, 8192);
    CHECK(rep.pass);
    CHECK(rep.samples == 8192);
    CHECK(rep.max_im <= rep.tolerance);
    CHECK(rep.max_identity_rel < 1e-9);
  }
}

TEST_CASE("property: concavity holds for random polynomial h") {
  // Im(phi'' conj(phi')) = (m-1)|h'|^2 Re(w - 1) with |w| = 1, whatever h is.
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int trial = 0; trial < 12; ++trial) {
    const int p = 1 + trial % 3;
    const int m = 2 + trial % 5;
    std::vector<cplx> c{1.0};
    for (int n = 0; n < 3; ++n) c.emplace_back(u(rng), u(rng));
    const auto map = derive_g(FunctionSpec::poly_series(p, c), m);
    const auto rep = concavity_check(map, 2048);
    CHECK(rep.pass);
    CHECK(rep.max_identity_rel < 1e-9);
  }
}

TEST_CASE("cusps of example1") {
  const auto map = example1();
  const auto rep = check_theorem1(map.h(), 4);
  const auto cusps = detect_cusps(map, rep);
  REQUIRE(cusps.count() == 7);
  for (const auto& c : cusps.cusps) {
    CHECK(std::abs(c.image) == doctest::Approx(1.4).epsilon(1e-12));
    CHECK(std::abs(c.image - std::polar(1.4, 2.0 * c.t)) < 1e-10);
  }
}

TEST_CASE("direct phi' zeros agree with the criterion roots") {
  const auto map = example2();
  const auto rep = check_theorem1(map.h(), 2);
  const auto zeros = find_phi_prime_zeros(map);
  REQUIRE(zeros.size() == rep.roots.size());
  for (std::size_t i = 0; i < zeros.size(); ++i) CHECK(std::abs(zeros[i] - rep.roots[i].t) < 1e-6);
  CHECK(detect_cusps(map, rep).count() == 7);
}

TEST_CASE("cusp detection is gated on the criterion") {
  const auto map = star();
  const auto rep = check_theorem1(map.h(), 2);
  CHECK_THROWS_AS(detect_cusps(map, rep), HypothesisError);
  const auto forced = detect_cusps(map, rep, {}, true);
  CHECK(forced.count() == 0);
  CHECK_FALSE(forced.warnings.empty());
}

TEST_CASE("star boundary is degenerate") {
  const auto map = star();
  const auto tr = trace_circle(map, 0.999, 4096);
  double scale = 0.0;
  for (const auto& p : tr.points) scale = std::max(scale, std::abs(p));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng);
    if (std::abs(std::pow(std::polar(1.0, t), 5) + 1.0) < 1e-3) continue;
    CHECK(std::abs(eval_phi_prime(map, t)) < 1e-8 * scale);
  }
}

TEST_CASE("straight sides of the star and octagon") {
  const auto s = star();
  const auto bs = straight_side_breakpoints(s);
  CHECK(bs.size() == 5);
  const auto ts = trace_circle(s, 0.9999, 8192);
  CHECK(segment_collinearity(ts, bs) < 1e-3);
  const auto o = octagon();
  const auto bo = straight_side_breakpoints(o);
  CHECK(bo.size() == 8);
  const auto to = trace_circle(o, 0.9999, 8192);
  CHECK(segment_collinearity(to, bo) < 1e-3);
  // A smooth curve is far from piecewise straight on the same arcs.
  const auto te = trace_circle(example1(), 0.9999, 8192);
  CHECK(segment_collinearity(te, bo) > 1e-2);
  CHECK_THROWS_AS(segment_collinearity(trace_circle(o, 0.9999, 256), std::vector<double>(100, 0.0)),
                  ResolutionError);
}

TEST_CASE("adaptive trace bounds the chord length") {
  const auto map = star();
  const auto tr = trace_circle_adaptive(map, 0.999, 1024, 1e-3, 1 << 18);
  const double diam = tr.diameter();
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
    CHECK(std::abs(tr.points[i + 1] - tr.points[i]) <= 1e-3 * diam * (1 + 1e-12));
    CHECK(tr.t[i + 1] > tr.t[i]);
  }
}
