#include "hvl/cli/sweep.hpp"

#include <cmath>
#include <random>

#include "hvl/cli/reports.hpp"
#include "hvl/cli/specfile.hpp"
#include "hvl/criterion.hpp"

namespace hvl::cli {

using nlohmann::json;

void SweepConfig::validate() const {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (p < 1) throw ParameterError("p must be >= 1");
  if (m < 2) throw ParameterError("m must be >= 2");
  if (degree() < p + 1) throw ParameterError("max_degree must be >= p + 1");
  if (!(coefficient_scale >= 0.0) || !std::isfinite(coefficient_scale)) {
    throw ParameterError("coefficient_scale must be a finite non-negative number");
  }
  if (!(margin_requirement >= 0.0)) throw ParameterError("margin_requirement must be >= 0");
  if (!(radius > 0.0 && radius < 1.0)) throw DomainError("sweep radius must lie in (0, 1)");
  if (grid_w < 1 || grid_h < 1) throw ParameterError("grid must be at least 1x1");
}

std::vector<std::vector<cplx>> sweep_coefficients(const SweepConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  // Explicit mapping so the stream does not depend on the standard library's
  // distribution implementation.
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  std::vector<std::vector<cplx>> out;
  for (int i = 0; i < cfg.trials; ++i) {
    std::vector<cplx> coeffs{cplx{1.0, 0.0}};
    for (int n = cfg.p + 1; n <= cfg.degree(); ++n) {
      const double re = uniform();
      const double im = uniform();
      coeffs.emplace_back(cfg.coefficient_scale * re, cfg.coefficient_scale * im);
    }
    out.push_back(std::move(coeffs));
  }
  return out;
}

SweepReport run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepReport report;
  report.config = cfg;
  const auto all = sweep_coefficients(cfg);
  for (int i = 0; i < cfg.trials; ++i) {
    SweepSample s;
    s.index = i;
    s.coeffs = all[static_cast<std::size_t>(i)];
    const FunctionSpec h = FunctionSpec::poly_series(cfg.p, s.coeffs);
    try {
      s.margin = check_remark_condition(h, cfg.m);
      if (!(*s.margin > cfg.margin_requirement)) s.rejection = "margin below requirement";
    } catch (const PoleError&) {
      s.rejection = "H vanishes inside the disk";
    }
    s.kept = s.rejection.empty();
    if (s.kept) {
      ++report.kept;
      try {
        const ValenceReport v = valence_scan(derive_g(h, cfg.m), cfg.radius, cfg.grid_w, cfg.grid_h);
        s.max_valence = v.max_valence;
        s.consistent_with_p = v.consistent_with_p;
        s.candidate = v.max_valence > cfg.p;
        if (s.candidate) ++report.candidates;
      } catch (const Error& e) {
        s.scan_error = e.what();
        ++report.scan_errors;
      }
    }
    report.samples.push_back(std::move(s));
  }
  return report;
}

json to_json(const SweepReport& r) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["report"] = "conjecture_sweep";
  const SweepConfig& c = r.config;
  doc["config"] = {{"trials", c.trials},
                   {"p", c.p},
                   {"m", c.m},
                   {"max_degree", c.degree()},
                   {"coefficient_scale", c.coefficient_scale},
                   {"seed", c.seed},
                   {"margin_requirement", c.margin_requirement},
                   {"radius", c.radius},
                   {"grid", {{"width", c.grid_w}, {"height", c.grid_h}}}};
  json samples = json::array();
  for (const SweepSample& s : r.samples) {
    json j;
    j["index"] = s.index;
    json coeffs = json::array();
    for (const cplx& a : s.coeffs) coeffs.push_back(complex_to_json(a));
    j["coeffs"] = coeffs;
    j["margin"] = s.margin ? num(*s.margin) : json(nullptr);
    j["kept"] = s.kept;
    if (!s.kept) {
      j["rejection"] = s.rejection;
    } else if (!s.scan_error.empty()) {
      j["scan_error"] = s.scan_error;
    } else {
      j["max_valence"] = s.max_valence;
      j["consistent_with_p"] = s.consistent_with_p;
      if (s.candidate) j["flag"] = "COUNTEREXAMPLE CANDIDATE (needs high-precision review)";
    }
    samples.push_back(j);
  }
  doc["samples"] = samples;
  doc["kept"] = r.kept;
  doc["scan_errors"] = r.scan_errors;
  doc["counterexample_candidates"] = r.candidates;
  return doc;
}

}  // namespace hvl::cli
