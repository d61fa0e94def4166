#include "hvl/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "hvl/cli/reports.hpp"
#include "hvl/cli/specfile.hpp"
#include "hvl/cli/sweep.hpp"
#include "hvl/criterion.hpp"
#include "hvl/geometry.hpp"
#include "hvl/parallel.hpp"
#include "hvl/render.hpp"
#include "hvl/valence.hpp"

namespace hvl::cli {

using nlohmann::json;

namespace {

// Raised by a command to finish with a specific code after printing `what`.
struct CommandExit {
  int code;
  std::string what;
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SpecError("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw SpecError("write failed for '" + path + "'");
}

std::pair<int, int> parse_grid(const std::string& s) {
  int w = 0, h = 0;
  char x = 0, extra = 0;
  std::istringstream is(s);
  if (!(is >> w >> x >> h) || (x != 'x' && x != 'X') || (is >> extra) || w < 1 || h < 1) {
    throw ParameterError("--grid expects WxH with positive integers, got '" + s + "'");
  }
  return {w, h};
}

cplx parse_complex(const std::string& s) {
  double re = 0.0, im = 0.0;
  char comma = 0, extra = 0;
  std::istringstream is(s);
  if (!(is >> re)) throw ParameterError("expected re,im, got '" + s + "'");
  if (is >> comma) {
    if (comma != ',' || !(is >> im) || (is >> extra)) {
      throw ParameterError("expected re,im, got '" + s + "'");
    }
  }
  return {re, im};
}

struct Common {
  std::string input;
  std::string out;
  int threads = -1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-i,--input", c.input, "Spec file or preset:<name>")->required();
  sub->add_option("-o,--out,--report", c.out, "Output file (default stdout)");
  sub->add_option("--threads", c.threads, "Worker threads (0 = auto)")->check(CLI::NonNegativeNumber);
}

struct ThreadScope {
  explicit ThreadScope(int n) : active(n >= 0) {
    if (active) set_thread_count(static_cast<std::size_t>(n));
  }
  ~ThreadScope() {
    if (active) set_thread_count(std::nullopt);
  }
  bool active;
};

int cmd_verify(const Common& c, int samples, double tol, std::ostream& out, std::ostream& err) {
  const HarmonicMapSpec map = load_spec(c.input);
  CriterionConfig cfg;
  cfg.grid_size = samples;
  cfg.bisect_tol = tol;
  cfg.validate();
  const CriterionReport report = check_theorem1(map.h(), map.m(), cfg);
  json doc = to_json(report);
  doc["spec"] = spec_to_json(map);
  if (report.theorem_applies) {
    CuspConfig cc;
    cc.quadrature = cfg.quadrature;
    doc["cusps"] = to_json(detect_cusps(map, report, cc))["cusps"];
  }
  write_output(c.out, dump(doc), out);
  if (!report.theorem_applies) {
    for (const auto& n : report.notes) err << "note: " << n << "\n";
    return kExitHypothesis;
  }
  return kExitOk;
}

int cmd_trace(const Common& c, double radius, int points, std::optional<double> tol,
              std::ostream& out, std::ostream& err) {
  const HarmonicMapSpec map = load_spec(c.input);
  if (!(radius > 0.0 && radius <= 1.0)) throw DomainError("trace radius must lie in (0, 1]");
  QuadratureConfig q;
  if (tol) q.abs_tol = q.rel_tol = *tol;
  q.validate();
  CurveTrace trace;
  try {
    trace = trace_circle(map, radius, points, q);
  } catch (const Error& e) {
    if (!dynamic_cast<const QuadratureError*>(&e) && !dynamic_cast<const PoleError*>(&e)) throw;
    err << "error: " << e.what() << "\n";
    int listed = 0;
    const double pi = std::acos(-1.0);
    for (int j = 0; j < points; ++j) {
      const double t = -pi + 2.0 * pi * j / points;
      try {
        (void)eval_parts(map, std::polar(radius, t), q);
      } catch (const Error& pe) {
        if (listed++ < 50) err << "failed at t = " << std::setprecision(17) << t << ": " << pe.what() << "\n";
      }
    }
    if (listed > 50) err << "... " << listed - 50 << " more\n";
    return kExitNumerical;
  }
  std::ostringstream os;
  write_trace_csv(trace, os);
  write_output(c.out, os.str(), out);
  return kExitOk;
}

int cmd_render(const Common& c, const RenderOptions& opts, std::ostream& out, std::ostream& err) {
  const HarmonicMapSpec map = load_spec(c.input);
  opts.validate();
  const CriterionReport report = check_theorem1(map.h(), map.m());
  if (!report.theorem_applies) err << "note: criterion does not apply; no cusp markers\n";
  write_output(c.out, render_scene(map, &report, opts), out);
  return kExitOk;
}

int cmd_valence(const Common& c, double radius, const std::string& grid, std::ostream& out,
                std::ostream& err) {
  const HarmonicMapSpec map = load_spec(c.input);
  const auto [w, h] = parse_grid(grid);
  ValenceReport report;
  try {
    report = valence_scan(map, radius, w, h);
  } catch (const Error& e) {
    if (dynamic_cast<const ParameterError*>(&e) || dynamic_cast<const DomainError*>(&e)) throw;
    throw CommandExit{kExitNumerical, e.what()};
  }
  write_output(c.out, dump(to_json(report)), out);
  if (!report.consistent_with_p) {
    err << "max valence " << report.max_valence << " differs from p = " << report.p << "\n";
    return kExitFinding;
  }
  return kExitOk;
}

int cmd_oracle(const Common& c, double radius, const std::vector<std::string>& probes, int random,
               int starts, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  const HarmonicMapSpec map = load_spec(c.input);
  if (!(radius > 0.0 && radius < 1.0)) throw DomainError("oracle radius must lie in (0, 1)");
  if (starts < 100) throw ParameterError("--starts must be >= 100");
  std::vector<cplx> ws;
  for (const auto& s : probes) ws.push_back(parse_complex(s));
  if (random > 0) {
    // Random probes are images of random interior points, so they lie in the image.
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double pi = std::acos(-1.0);
    for (int i = 0; i < random; ++i) {
      const double rr = 0.95 * radius * std::sqrt(uniform());
      const double th = 2.0 * pi * uniform() - pi;
      ws.push_back(eval_f(map, std::polar(rr, th)));
    }
  }
  if (ws.empty()) throw ParameterError("give --w re,im or --random N");

  ValenceConfig vcfg;
  NewtonConfig ncfg;
  ncfg.seed = static_cast<unsigned>(seed);
  const CurveTrace trace = valence_trace(map, radius, vcfg);

  json results = json::array();
  int agree = 0, disagree = 0, multiple = 0, indeterminate = 0;
  for (const cplx& w : ws) {
    try {
      const CrossCheckResult r = cross_check(map, trace, w, vcfg, ncfg, starts);
      switch (r.status) {
        case CrossCheck::agree: ++agree; break;
        case CrossCheck::disagree: ++disagree; break;
        case CrossCheck::indeterminate_multiplicity: ++multiple; break;
      }
      results.push_back(to_json(r));
    } catch (const IndeterminateProbe& e) {
      ++indeterminate;
      results.push_back({{"w", complex_to_json(w)}, {"status", "indeterminate-probe"},
                         {"error", e.what()}});
    }
  }
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["report"] = "oracle";
  doc["radius"] = radius;
  doc["starts"] = starts;
  doc["seed"] = seed;
  doc["results"] = results;
  doc["agree"] = agree;
  doc["disagree"] = disagree;
  doc["indeterminate_multiplicity"] = multiple;
  doc["indeterminate_probe"] = indeterminate;
  write_output(c.out, dump(doc), out);
  if (disagree > 0) {
    err << disagree << " probe(s) where winding and preimage count differ\n";
    return kExitFinding;
  }
  if (indeterminate == static_cast<int>(ws.size())) {
    err << "every probe lies too close to the traced curve\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_conjecture(const SweepConfig& cfg, const std::string& out_path, std::ostream& out,
                   std::ostream& err) {
  const SweepReport report = run_sweep(cfg);
  if (report.kept == 0) {
    throw CommandExit{kExitNumerical, "acceptance region empty; lower coefficient_scale"};
  }
  write_output(out_path, dump(to_json(report)), out);
  if (report.candidates > 0) {
    err << report.candidates << " counterexample candidate(s) flagged for review\n";
    return kExitFinding;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary cusp criterion and valence tools for harmonic maps h + conj(g)", "hvl"};
  app.require_subcommand(1);

  Common common;
  int samples = 8192;
  double tol = 1e-12;
  double trace_radius = 1.0;
  double valence_radius = 0.999;
  double oracle_radius = 0.999;
  int points = 4096;
  std::optional<double> quad_tol;
  std::string grid = "64x64";
  RenderOptions ropts;
  bool no_cusps = false;
  std::vector<std::string> probes;
  int random = 0;
  int starts = 200;
  std::uint64_t seed = 0;
  SweepConfig sweep;
  std::string sweep_out;
  int sweep_threads = -1;

  auto* verify = app.add_subcommand("verify", "Check the cusp-count criterion");
  add_common(verify, common);
  verify->add_option("--samples", samples, "Phase grid size (power of two >= 1024)");
  verify->add_option("--tol", tol, "Root bisection tolerance");

  auto* trace = app.add_subcommand("trace", "Write f(r e^{it}) samples as CSV");
  add_common(trace, common);
  trace->add_option("--radius", trace_radius, "Circle radius in (0, 1]");
  trace->add_option("--points,--samples", points, "Number of samples");
  trace->add_option("--tol", quad_tol, "Quadrature tolerance (rational specs)");

  auto* render = app.add_subcommand("render", "Write an SVG figure of the image");
  add_common(render, common);
  render->add_option("--samples", ropts.samples_per_curve, "Samples per curve (>= 512)");
  render->add_option("--rays", ropts.ray_count, "Number of radial rays");
  render->add_option("--radii", ropts.circle_radii, "Radii of the grid circles")->expected(0, -1);
  render->add_option("--max-radius", ropts.max_radius, "Radius of the outer curve");
  render->add_option("--width", ropts.width, "Canvas width in px");
  render->add_option("--height", ropts.height, "Canvas height in px");
  render->add_flag("--no-cusps", no_cusps, "Omit cusp markers");

  auto* valence = app.add_subcommand("valence", "Winding-number valence scan");
  add_common(valence, common);
  valence->add_option("--radius", valence_radius, "Circle radius in (0, 1)");
  valence->add_option("--grid", grid, "Probe grid WxH");

  auto* oracle = app.add_subcommand("oracle", "Compare winding numbers with Newton preimages");
  add_common(oracle, common);
  oracle->add_option("--radius", oracle_radius, "Circle radius in (0, 1)");
  oracle->add_option("--w", probes, "Probe point re,im (repeatable)");
  oracle->add_option("--random", random, "Number of random probes in the image");
  oracle->add_option("--starts", starts, "Newton starts per probe (>= 100)");
  oracle->add_option("--seed", seed, "Seed for random probes and starts");

  auto* conj = app.add_subcommand("conjecture", "Seeded sweep for valence counterexamples");
  conj->add_option("--trials", sweep.trials, "Number of random polynomials");
  conj->add_option("-p", sweep.p, "Valence p");
  conj->add_option("-m", sweep.m, "Shear exponent m");
  conj->add_option("--max-degree", sweep.max_degree, "Highest exponent of h (0 = p + 2)");
  conj->add_option("--scale", sweep.coefficient_scale, "Coefficient scale");
  conj->add_option("--seed", sweep.seed, "Random seed");
  conj->add_option("--margin", sweep.margin_requirement, "Required margin (>= 0)");
  conj->add_option("--radius", sweep.radius, "Scan radius in (0, 1)");
  conj->add_option("--grid", grid, "Probe grid WxH");
  conj->add_option("-o,--out,--report", sweep_out, "Output file (default stdout)");
  conj->add_option("--threads", sweep_threads, "Worker threads (0 = auto)")
      ->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*conj) {
      const ThreadScope scope(sweep_threads);
      const auto [w, h] = parse_grid(grid);
      sweep.grid_w = w;
      sweep.grid_h = h;
      return cmd_conjecture(sweep, sweep_out, out, err);
    }
    const ThreadScope scope(common.threads);
    if (*verify) return cmd_verify(common, samples, tol, out, err);
    if (*trace) return cmd_trace(common, trace_radius, points, quad_tol, out, err);
    if (*render) {
      ropts.show_cusps = !no_cusps;
      return cmd_render(common, ropts, out, err);
    }
    if (*valence) return cmd_valence(common, valence_radius, grid, out, err);
    if (*oracle) return cmd_oracle(common, oracle_radius, probes, random, starts, seed, out, err);
  } catch (const CommandExit& e) {
    err << "error: " << e.what << "\n";
    return e.code;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: domain error: " << e.what() << "\n";
    return kExitInput;
  } catch (const HypothesisError& e) {
    err << "error: hypothesis failure: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInput;
}

}  // namespace hvl::cli
