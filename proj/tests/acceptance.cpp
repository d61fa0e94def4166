// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "hvl/cli/commands.hpp"
#include "hvl/cli/specfile.hpp"
#include "hvl/cli/sweep.hpp"
#include "hvl/criterion.hpp"
#include "hvl/geometry.hpp"
#include "hvl/valence.hpp"
#include "json.hpp"

using namespace hvl;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

std::vector<cplx> random_disk(std::size_t n, double rmax, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(std::polar(rmax * std::sqrt(u(rng)), 2 * M_PI * u(rng) - M_PI));
  }
  return out;
}

int run_cli(std::vector<std::string> args, std::string& out) {
  std::ostringstream o, e;
  const int code = cli::run_cli(args, o, e);
  out = o.str();
  return code;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome roots_example1() {
  Outcome o;
  std::string out;
  const int code = run_cli({"verify", "-i", "preset:example1"}, out);
  o.require(code == cli::kExitOk, "verify exit " + std::to_string(code));
  const json doc = json::parse(out);
  o.require(doc["theorem_applies"] == true, "theorem_applies false");
  o.require(doc["total_roots"] == 7, "total_roots " + doc["total_roots"].dump());
  double worst = 0.0;
  for (const auto& r : doc["roots"]) {
    worst = std::max(worst, std::abs(r["t"].get<double>() - 2 * M_PI * r["k"].get<int>() / 7));
  }
  o.require(doc["roots"].size() == 7 && worst < 1e-10, "root error " + fmt("%.3g", worst));
  o.detail << (o.pass ? "7 roots, max |t - 2 pi k/7| = " + fmt("%.3g", worst) : "");
  return o;
}

Outcome roots_example2() {
  Outcome o;
  const auto map = cli::make_preset("example2");
  const auto rep = check_theorem1(map.h(), map.m());
  o.require(rep.theorem_applies, "theorem_applies false");
  o.require(rep.total_roots == 7, "total_roots " + std::to_string(rep.total_roots));
  for (int k = -3; k <= 3; ++k) {
    o.require(rep.per_k_counts.at(k) == 1, "level " + std::to_string(k) + " count " +
                                               std::to_string(rep.per_k_counts.at(k)));
  }
  o.require(rep.remark_margin && *rep.remark_margin > 0, "remark margin not positive");
  if (o.pass) o.detail << "7 roots, one per k in -3..3, margin " << fmt("%.6g", *rep.remark_margin);
  return o;
}

Outcome concavity() {
  Outcome o;
  for (const char* name : {"example1", "example2"}) {
    const auto rep = concavity_check(cli::make_preset(name), 8192);
    o.require(rep.samples == 8192 && rep.skipped == 0, std::string(name) + " skipped samples");
    o.require(rep.max_im <= 1e-9 * rep.scale,
              std::string(name) + " max Im = " + fmt("%.3g", rep.max_im));
    o.require(rep.max_identity_rel < 1e-9,
              std::string(name) + " identity rel = " + fmt("%.3g", rep.max_identity_rel));
    if (o.pass) {
      o.detail << name << ": max Im/scale " << fmt("%.3g", rep.max_im / rep.scale)
               << ", identity rel " << fmt("%.3g", rep.max_identity_rel) << ". ";
    }
  }
  return o;
}

Outcome valence_certificates() {
  Outcome o;
  const std::pair<const char*, int> cases[] = {
      {"example1", 2}, {"example2", 3}, {"star", 2}, {"octagon", 1}};
  for (const auto& [name, expected] : cases) {
    const auto map = cli::make_preset(name);
    const auto rep = valence_scan(map, 0.999, 64, 64);
    int worst = 0;
    for (const auto& w : rep.results) worst = std::max(worst, w.winding);
    o.require(rep.max_valence == expected && worst <= expected,
              std::string(name) + " max " + std::to_string(rep.max_valence));

    const auto trace = valence_trace(map, 0.999);
    int simple = 0, agree = 0;
    unsigned seed = 100;
    while (simple < 20 && seed < 200) {
      // Probes are images of random interior points.
      const cplx w = eval_f(map, random_disk(1, 0.95, seed++)[0]);
      try {
        const auto r = cross_check(map, trace, w);
        if (r.status == CrossCheck::indeterminate_multiplicity) continue;
        ++simple;
        if (r.status == CrossCheck::agree) ++agree;
      } catch (const IndeterminateProbe&) {
      }
    }
    o.require(simple == 20 && agree == simple, std::string(name) + " oracle " +
                                                   std::to_string(agree) + "/" +
                                                   std::to_string(simple));
    if (o.pass) {
      o.detail << name << " " << rep.max_valence << " (" << rep.indeterminate
               << " indeterminate, oracle " << agree << "/" << simple << "). ";
    }
  }
  return o;
}

Outcome star_degeneracy() {
  Outcome o;
  const auto map = cli::make_preset("star");
  const auto trace = trace_circle(map, 1.0 - 1e-6, 8192);
  double scale = 0.0;
  for (const auto& p : trace.points) scale = std::max(scale, std::abs(p));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  double worst = 0.0;
  int n = 0;
  while (n < 100) {
    const double t = u(rng);
    if (std::abs(std::pow(std::polar(1.0, t), 5) + 1.0) < 1e-6) continue;
    worst = std::max(worst, std::abs(eval_phi_prime(map, t)));
    ++n;
  }
  o.require(worst < 1e-8 * scale, "max |phi'| = " + fmt("%.3g", worst));
  if (o.pass) o.detail << "max |phi'| / scale = " << fmt("%.3g", worst / scale);
  return o;
}

Outcome straight_sides() {
  Outcome o;
  for (const char* name : {"octagon", "star"}) {
    const auto map = cli::make_preset(name);
    const auto bp = straight_side_breakpoints(map);
    const double dev = segment_collinearity(trace_circle(map, 0.9999, 16384), bp);
    o.require(dev < 1e-3, std::string(name) + " deviation " + fmt("%.3g", dev));
    if (o.pass) o.detail << name << " " << bp.size() << " arcs, deviation " << fmt("%.3g", dev) << ". ";
  }
  return o;
}

Outcome phase_derivative() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-M_PI + 1e-3, M_PI - 1e-3);
  for (const char* name : {"example1", "example2"}) {
    const auto map = cli::make_preset(name);
    const auto table = unwrap_arg_H(map.h(), 8192);
    double worst = 0.0;
    const double d = 1e-6;
    for (int i = 0; i < 100; ++i) {
      const double t = u(rng);
      const double fd =
          (eval_F(map.h(), map.m(), t + d, table) - eval_F(map.h(), map.m(), t - d, table)) /
          (2 * d);
      const double exact = eval_F_prime(map.h(), map.m(), t);
      worst = std::max(worst, std::abs(fd - exact) / std::abs(exact));
    }
    o.require(worst < 1e-6, std::string(name) + " rel " + fmt("%.3g", worst));
    if (o.pass) o.detail << name << " max rel " << fmt("%.3g", worst) << ". ";
  }
  return o;
}

Outcome construction_identity() {
  Outcome o;
  for (const auto& name : cli::preset_names()) {
    const auto map = cli::make_preset(name);
    double worst = 0.0;
    const double d = 1e-5;
    for (const cplx z : random_disk(200, 0.95, 11)) {
      const cplx fd = (eval_g(map, z + d) - eval_g(map, z - d)) / (2 * d);
      const cplx exact = std::pow(z, map.m() - 1) * eval_h_prime(map.h(), z);
      worst = std::max(worst, std::abs(fd - exact) / std::max(std::abs(exact), 1e-300));
    }
    o.require(worst < 1e-6, name + " rel " + fmt("%.3g", worst));
    if (o.pass) o.detail << name << " " << fmt("%.3g", worst) << ". ";
  }
  return o;
}

Outcome sweep_p1_m2() {
  Outcome o;
  cli::SweepConfig cfg;
  // Trials are a search budget; the first 50 samples with positive margin count.
  cfg.trials = 500;
  cfg.p = 1;
  cfg.m = 2;
  cfg.coefficient_scale = 0.2;
  cfg.seed = 42;
  const auto rep = cli::run_sweep(cfg);
  int counted = 0;
  for (const auto& s : rep.samples) {
    if (!s.kept || counted == 50) continue;
    ++counted;
    o.require(s.margin && *s.margin > 0, "sample " + std::to_string(s.index) + " margin");
    o.require(s.scan_error.empty(), "sample " + std::to_string(s.index) + ": " + s.scan_error);
    o.require(s.max_valence == 1, "sample " + std::to_string(s.index) + " valence " +
                                      std::to_string(s.max_valence));
  }
  o.require(counted == 50, "only " + std::to_string(counted) + " samples with positive margin");
  o.require(rep.candidates == 0, std::to_string(rep.candidates) + " candidates");
  if (o.pass) o.detail << "50 of " << rep.kept << " kept samples checked, all max_valence 1";
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::string> render = {"render", "-i", "preset:example1"};
  const std::vector<std::string> sweep = {"conjecture", "--trials", "12",   "-p",   "2",
                                          "-m",         "3",        "--seed", "42", "--grid",
                                          "32x32"};
  for (const auto& base : {render, sweep}) {
    std::string ref;
    bool first = true;
    for (const char* threads : {"1", "8", "1", "8"}) {
      auto args = base;
      args.push_back("--threads");
      args.push_back(threads);
      std::string out;
      const int code = run_cli(args, out);
      o.require(code == cli::kExitOk || code == cli::kExitFinding,
                base[0] + " exit " + std::to_string(code));
      if (first) {
        ref = out;
        first = false;
      } else {
        o.require(out == ref, base[0] + " output differs with " + threads + " threads");
      }
    }
    o.require(!ref.empty(), base[0] + " produced no output");
  }
  if (o.pass) o.detail << "render and conjecture byte-identical over 4 runs (1 and 8 threads)";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> fn;
  };
  const Criterion criteria[] = {
      {1, "example1 roots", roots_example1},
      {2, "example2 roots", roots_example2},
      {3, "concavity", concavity},
      {4, "valence certificates", valence_certificates},
      {5, "star boundary degeneracy", star_degeneracy},
      {6, "straight sides", straight_sides},
      {7, "phase derivative", phase_derivative},
      {8, "construction identity", construction_identity},
      {9, "p=1 m=2 sweep", sweep_p1_m2},
      {10, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %-26s %s  (%.1fs) %s\n", c.id, c.name, out.pass ? "PASS" : "FAIL",
                secs, out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  std::printf("%d/10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
