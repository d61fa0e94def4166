#include "hvl/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hvl/parallel.hpp"

namespace hvl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxPhaseSamples = std::size_t{1} << 20;

cplx unit(double t) { return std::polar(1.0, t); }

cplx eval_H(const FunctionSpec& spec, cplx z) {
  const cplx num = spec.H_numer()(z);
  if (spec.is_series()) return num;
  const cplx d = spec.denom()(z);
  if (std::abs(d) <= 64.0 * std::numeric_limits<double>::epsilon() *
                         spec.denom().abs_bound(std::abs(z))) {
    throw HypothesisError("H blows up on the boundary (pole of h')");
  }
  return num / d;
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

}  // namespace

void CriterionConfig::validate() const {
  if (grid_size < 1024 || (grid_size & (grid_size - 1)) != 0) {
    throw ParameterError("grid_size must be a power of two >= 1024");
  }
  if (!(bisect_tol > 0.0)) throw ParameterError("bisect_tol must be positive");
  if (!(tangency_threshold >= 0.0)) {
    throw ParameterError("tangency_threshold must be non-negative");
  }
  if (!(h_nonvanish_tol > 0.0)) {
    throw ParameterError("h_nonvanish_tol must be positive");
  }
  quadrature.validate();
}

std::size_t PhaseTable::locate(double t) const {
  auto it = std::upper_bound(s_.begin(), s_.end(), t,
                             [](double v, const PhaseSample& s) { return v < s.t; });
  if (it == s_.begin()) return 0;
  return static_cast<std::size_t>(std::distance(s_.begin(), it)) - 1;
}

int PhaseTable::winding() const {
  return static_cast<int>(std::lround((s_.back().phase - s_.front().phase) / (2.0 * kPi)));
}

double PhaseTable::min_modulus() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : s_) m = std::min(m, std::abs(s.H));
  return m;
}

PhaseTable unwrap_arg_H(const FunctionSpec& spec, int grid_size,
                        double h_nonvanish_tol) {
  if (grid_size < 2) throw ParameterError("grid_size too small");
  if (spec.has_boundary_poles()) {
    const cplx pole = spec.boundary_poles().front();
    throw HypothesisError("H blows up on the boundary: pole of h' at t = " +
                          std::to_string(std::arg(pole)));
  }
  const auto n = static_cast<std::size_t>(grid_size);
  std::vector<double> ts(n + 1);
  std::vector<cplx> zs(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    ts[j] = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    zs[j] = unit(ts[j]);
  }
  std::vector<cplx> H(n + 1);
  if (spec.is_series()) {
    spec.H_numer().evaluate(zs, H);
  } else {
    for (std::size_t j = 0; j <= n; ++j) H[j] = eval_H(spec, zs[j]);
  }

  auto check = [&](double t, cplx h) {
    const double a = std::abs(h);
    if (!std::isfinite(a)) {
      throw HypothesisError("H blows up on the boundary at t = " + std::to_string(t));
    }
    if (a <= h_nonvanish_tol) {
      throw HypothesisError("H vanishes on the boundary at t = " + std::to_string(t));
    }
  };
  for (std::size_t j = 0; j <= n; ++j) check(ts[j], H[j]);

  std::vector<PhaseSample> out;
  out.reserve(n + 1);
  out.push_back({ts[0], std::arg(H[0]), H[0]});

  // Appends samples in (a.t, t_b] so that every increment stays below pi/2.
  auto extend = [&](auto&& self, double tb, cplx hb, int depth) -> void {
    const PhaseSample& a = out.back();
    const double d = std::arg(hb * std::conj(a.H));
    if (std::abs(d) < 0.5 * kPi) {
      out.push_back({tb, a.phase + d, hb});
      return;
    }
    if (out.size() >= kMaxPhaseSamples || depth > 40) {
      throw ResolutionError("phase unwrapping exceeded 2^20 samples");
    }
    const double tm = 0.5 * (a.t + tb);
    const cplx hm = eval_H(spec, unit(tm));
    check(tm, hm);
    self(self, tm, hm, depth + 1);
    self(self, tb, hb, depth + 1);
  };
  for (std::size_t j = 1; j <= n; ++j) extend(extend, ts[j], H[j], 0);
  return PhaseTable(std::move(out));
}

double eval_F(const FunctionSpec& spec, int m, double t, const PhaseTable& table) {
  const auto& s = table.samples();
  const std::size_t i = table.locate(t);
  double phase;
  if (t == s[i].t) {
    phase = s[i].phase;
  } else {
    const cplx h = eval_H(spec, unit(t));
    phase = s[i].phase + std::arg(h * std::conj(s[i].H));
  }
  return (2.0 * spec.p() + m - 1.0) * t + 2.0 * phase;
}

double eval_F_prime(const FunctionSpec& spec, int m, double t) {
  const cplx z = unit(t);
  const cplx hp = eval_h_prime(spec, z);
  if (hp == 0.0) throw PoleError("h' vanishes at the sample point", z);
  const cplx hpp = eval_h_second(spec, z);
  return m + 1.0 + 2.0 * (z * hpp / hp).real();
}

int level_bound(int p, int m) { return (2 * p + m + 1) / 2; }

namespace {

struct LevelFn {
  const FunctionSpec& spec;
  int m;
  const PhaseTable& table;
  double level;
  double operator()(double t) const { return eval_F(spec, m, t, table) - level; }
};

double bisect(const LevelFn& g, double a, double b, double ga, double tol) {
  double best_t = a;
  double best_g = std::abs(ga);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double gm = g(mid);
    if (std::abs(gm) < best_g) {
      best_g = std::abs(gm);
      best_t = mid;
    }
    if (gm == 0.0) return mid;
    if (sign_of(gm) == sign_of(ga)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
    if (b - a < tol && best_g < tol) break;
  }
  return best_t;
}

// Minimizes sgn * g on [a, b] by golden-section search.
double golden_min(const LevelFn& g, int sgn, double a, double b, double& fmin) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = sgn * g(c);
  double fd = sgn * g(d);
  for (int it = 0; it < 200 && (b - a) > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = sgn * g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = sgn * g(d);
    }
  }
  if (fc < fd) {
    fmin = fc;
    return c;
  }
  fmin = fd;
  return d;
}

}  // namespace

std::vector<RootRecord> find_level_roots(const FunctionSpec& spec, int m,
                                         const PhaseTable& table,
                                         const std::vector<int>& levels,
                                         const CriterionConfig& cfg) {
  const auto& s = table.samples();
  const std::size_t n = s.size();
  const double slope = 2.0 * spec.p() + m - 1.0;
  std::vector<double> F(n);
  for (std::size_t j = 0; j < n; ++j) F[j] = slope * s[j].t + 2.0 * s[j].phase;

  std::vector<std::vector<RootRecord>> per_level(levels.size());
  parallel_for(levels.size(), [&](std::size_t li) {
    const int k = levels[li];
    const double level = 2.0 * k * std::numbers::pi;
    const LevelFn g{spec, m, table, level};
    std::vector<double> G(n);
    for (std::size_t j = 0; j < n; ++j) G[j] = F[j] - level;
    auto& out = per_level[li];
    auto emit = [&](double t, bool tangent) {
      out.push_back(RootRecord{k, t, 0.0, tangent});
    };

    // The last entry is t = pi, which belongs to the next period.
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const int sj = sign_of(G[j]);
      const int sn = sign_of(G[j + 1]);
      if (sj == 0) {
        emit(s[j].t, false);
      } else if (sj * sn < 0) {
        emit(bisect(g, s[j].t, s[j + 1].t, G[j], cfg.bisect_tol), false);
      }
    }

    // Local minima of |G| with no sign change: grazing or a hidden pair.
    for (std::size_t j = 1; j + 1 < n; ++j) {
      const int sj = sign_of(G[j]);
      if (sj == 0 || sign_of(G[j - 1]) != sj || sign_of(G[j + 1]) != sj) continue;
      const double aj = std::abs(G[j]);
      if (aj > std::abs(G[j - 1]) || aj > std::abs(G[j + 1])) continue;
      const double screen =
          std::max(cfg.tangency_threshold,
                   4.0 * std::max(std::abs(G[j + 1] - G[j]), std::abs(G[j] - G[j - 1])));
      if (aj >= screen) continue;
      double fmin = 0.0;
      const double tmin = golden_min(g, sj, s[j - 1].t, s[j + 1].t, fmin);
      if (fmin < 0.0) {
        emit(bisect(g, s[j - 1].t, tmin, G[j - 1], cfg.bisect_tol), false);
        emit(bisect(g, tmin, s[j + 1].t, sj * fmin, cfg.bisect_tol), false);
      } else if (fmin < cfg.tangency_threshold) {
        emit(tmin, true);
      }
    }
  });

  std::vector<RootRecord> roots;
  for (auto& v : per_level) roots.insert(roots.end(), v.begin(), v.end());
  std::sort(roots.begin(), roots.end(), [](const RootRecord& a, const RootRecord& b) {
    return a.t != b.t ? a.t < b.t : a.k < b.k;
  });
  return roots;
}

std::vector<RootRecord> find_criterion_roots(const FunctionSpec& spec, int m,
                                             const CriterionConfig& cfg) {
  cfg.validate();
  const HarmonicMapSpec map(spec, m);
  const PhaseTable table = unwrap_arg_H(spec, cfg.grid_size, cfg.h_nonvanish_tol);
  const int kmax = level_bound(spec.p(), m);
  std::vector<int> levels;
  for (int k = -kmax; k <= kmax; ++k) levels.push_back(k);
  auto roots = find_level_roots(spec, m, table, levels, cfg);
  for (auto& r : roots) r.f_value_at_root = eval_f(map, unit(r.t), cfg.quadrature);
  return roots;
}

double check_remark_condition(const FunctionSpec& spec, int m,
                              const CriterionConfig& cfg) {
  for (const cplx& zero : spec.H_numer().roots()) {
    if (std::abs(zero) < 1.0) {
      throw PoleError("h' vanishes inside the unit disk", zero);
    }
  }
  const double radii[] = {0.9, 0.99, 0.999, 1.0 - 1e-6};
  const auto n = static_cast<std::size_t>(cfg.grid_size);
  double margin = std::numeric_limits<double>::infinity();
  std::vector<cplx> zs(n), hp(n), hpp(n);
  for (double r : radii) {
    for (std::size_t j = 0; j < n; ++j) {
      zs[j] = std::polar(r, -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n));
    }
    eval_h_derivs_many(spec, zs, hp, hpp);
    for (std::size_t j = 0; j < n; ++j) {
      if (hp[j] == 0.0) throw PoleError("h' vanishes at a sample point", zs[j]);
      const double v = (1.0 + zs[j] * hpp[j] / hp[j]).real() + 0.5 * (m - 1);
      margin = std::min(margin, v);
    }
  }
  return margin;
}

CriterionReport check_theorem1(const FunctionSpec& spec, int m,
                               const CriterionConfig& cfg) {
  cfg.validate();
  CriterionReport rep;
  rep.p = spec.p();
  rep.m = m;
  const int kmax = level_bound(spec.p(), m);
  for (int k = -kmax; k <= kmax; ++k) rep.per_k_counts[k] = 0;

  try {
    rep.remark_margin = check_remark_condition(spec, m, cfg);
  } catch (const Error& e) {
    rep.notes.push_back(std::string("remark condition: ") + e.what());
  }

  std::optional<PhaseTable> table;
  try {
    table.emplace(unwrap_arg_H(spec, cfg.grid_size, cfg.h_nonvanish_tol));
  } catch (const Error& e) {
    rep.notes.push_back(std::string("hypothesis: ") + e.what());
  }
  if (!table) return rep;

  rep.h_min_modulus = table->min_modulus();
  rep.h_winding = table->winding();
  rep.h_nonvanishing = *rep.h_winding == 0;
  if (!rep.h_nonvanishing) {
    rep.notes.push_back("hypothesis: H has " + std::to_string(*rep.h_winding) +
                        " zero(s) inside the unit disk");
  }
  rep.hypotheses_hold = rep.h_nonvanishing;

  const HarmonicMapSpec map(spec, m);
  std::vector<int> levels;
  for (int k = -kmax; k <= kmax; ++k) levels.push_back(k);
  rep.roots = find_level_roots(spec, m, *table, levels, cfg);
  for (auto& r : rep.roots) {
    r.f_value_at_root = eval_f(map, unit(r.t), cfg.quadrature);
    if (r.suspected_tangency) {
      rep.any_tangency = true;
    } else {
      ++rep.per_k_counts[r.k];
      ++rep.total_roots;
    }
  }
  bool single = true;
  for (const auto& [k, c] : rep.per_k_counts) single = single && c <= 1;
  if (!single) rep.notes.push_back("some level 2k*pi has more than one root");
  if (rep.any_tangency) rep.notes.push_back("suspected tangency (double root)");
  if (rep.total_roots != map.cusp_count()) {
    rep.notes.push_back("total root count " + std::to_string(rep.total_roots) +
                        " differs from 2p+m-1 = " + std::to_string(map.cusp_count()));
  }
  rep.theorem_applies = rep.h_nonvanishing && single &&
                        rep.total_roots == map.cusp_count() && !rep.any_tangency;
  return rep;
}

}  // namespace hvl
