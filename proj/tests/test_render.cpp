#include <cmath>
#include <regex>
#include <string>

#include "doctest.h"
#include "hvl/parallel.hpp"
#include "hvl/render.hpp"
#include "test_helpers.hpp"

using namespace hvl;
using namespace testing;

namespace {

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = 0; (pos = s.find(needle, pos)) != std::string::npos; ++pos) ++n;
  return n;
}

RenderOptions small() {
  RenderOptions o;
  o.samples_per_curve = 512;
  o.ray_count = 6;
  o.circle_radii = {0.5, 0.9};
  return o;
}

}  // namespace

TEST_CASE("document structure") {
  const auto map = example1();
  const auto rep = check_theorem1(map.h(), 4);
  const std::string svg = render_scene(map, &rep, small());
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count(svg, "<svg ") == 1);
  CHECK(count(svg, "version=\"1.1\"") == 1);
  CHECK(count(svg, "class=\"boundary\"") == 1);
  CHECK(count(svg, "class=\"circle\"") == 2);
  CHECK(count(svg, "class=\"ray\"") == 6);
  CHECK(count(svg, "class=\"cusp\"") == 7);
  CHECK(svg.find("href") == std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);
  CHECK(svg.find("inf") == std::string::npos);
}

TEST_CASE("coordinates use six decimals") {
  const auto map = example2();
  const std::string svg = render_scene(map, nullptr, small());
  const std::regex num(R"((-?\d+\.\d+),(-?\d+\.\d+))");
  int seen = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), num); it != std::sregex_iterator();
       ++it) {
    for (int g = 1; g <= 2; ++g) {
      const std::string v = (*it)[g];
      CHECK(v.size() - v.find('.') - 1 == 6);
      CHECK(std::isfinite(std::stod(v)));
    }
    ++seen;
  }
  CHECK(seen > 512);
  CHECK(count(svg, "class=\"cusp\"") == 0);
}

TEST_CASE("viewBox covers the boundary with padding") {
  const auto map = example1();
  RenderOptions o = small();
  o.samples_per_curve = 4096;
  const std::string svg = render_scene(map, nullptr, o);
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, std::regex(R"re(viewBox="([^ ]+) ([^ ]+) ([^ ]+) ([^"]+)")re")));
  const double x0 = std::stod(m[1]), w = std::stod(m[3]);
  // The cusps sit at 1.4 e^{4 pi i k / 7}; they are the extreme points.
  const double xmin = 1.4 * std::cos(6 * M_PI / 7);
  const double span = 1.4 - xmin;
  CHECK(x0 == doctest::Approx(xmin - 0.05 * span).epsilon(1e-4));
  CHECK(w == doctest::Approx(1.1 * span).epsilon(1e-4));
}

TEST_CASE("minimal scene") {
  RenderOptions o;
  o.circle_radii = {};
  o.ray_count = 0;
  o.samples_per_curve = 512;
  const std::string svg = render_scene(example1(), nullptr, o);
  CHECK(count(svg, "<path") == 1);
  CHECK(count(svg, " Z\"") == 1);
}

TEST_CASE("byte-identical across runs and thread counts") {
  const auto map = star();
  set_thread_count(1);
  const std::string a = render_scene(map, nullptr, small());
  set_thread_count(8);
  const std::string b = render_scene(map, nullptr, small());
  set_thread_count(std::nullopt);
  CHECK(a == b);
  CHECK(count(a, "broken path") == 0);
}

TEST_CASE("option validation") {
  RenderOptions o;
  o.samples_per_curve = 100;
  CHECK_THROWS_AS(render_scene(example1(), nullptr, o), ParameterError);
  o = RenderOptions{};
  o.circle_radii = {1.0};
  CHECK_THROWS_AS(render_scene(example1(), nullptr, o), ParameterError);
}
