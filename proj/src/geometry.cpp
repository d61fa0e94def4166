#include "hvl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "hvl/parallel.hpp"

namespace hvl {

namespace {

constexpr double kPi = std::numbers::pi;

cplx conj_pow(cplx z, int k) {
  const cplx zc = std::conj(z);
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= zc;
  return r;
}

// Maps t into [-pi, pi).
double to_range(double t) {
  t = std::fmod(t + kPi, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  return t - kPi;
}

std::vector<double> uniform_ts(int n) {
  std::vector<double> ts(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) ts[static_cast<std::size_t>(j)] = -kPi + 2.0 * kPi * j / n;
  return ts;
}

double bbox_diagonal(const std::vector<cplx>& pts) {
  if (pts.empty()) return 0.0;
  double x0 = pts[0].real(), x1 = x0, y0 = pts[0].imag(), y1 = y0;
  for (const cplx& p : pts) {
    x0 = std::min(x0, p.real());
    x1 = std::max(x1, p.real());
    y0 = std::min(y0, p.imag());
    y1 = std::max(y1, p.imag());
  }
  return std::hypot(x1 - x0, y1 - y0);
}

}  // namespace

double CurveTrace::diameter() const { return bbox_diagonal(points); }

CurveTrace trace_circle(const HarmonicMapSpec& map, double r, int n,
                        const QuadratureConfig& cfg) {
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("trace radius must lie in (0, 1]");
  if (n < 256) throw ParameterError("trace needs at least 256 samples");
  CurveTrace tr;
  tr.radius = r;
  tr.t = uniform_ts(n);
  tr.map = std::make_shared<const HarmonicMapSpec>(map);
  tr.quadrature = cfg;
  std::vector<cplx> zs(tr.t.size());
  for (std::size_t j = 0; j < zs.size(); ++j) zs[j] = std::polar(r, tr.t[j]);
  tr.points = eval_f_many(map, zs, cfg, &tr.clamped);

  if (r == 1.0 && !map.h().has_boundary_poles()) {
    tr.phi_prime.resize(zs.size());
    tr.phi_second.resize(zs.size());
    for (std::size_t j = 0; j < zs.size(); ++j) {
      tr.phi_prime[j] = eval_phi_prime(map, tr.t[j]);
      tr.phi_second[j] = eval_phi_second(map, tr.t[j]);
    }
  }
  return tr;
}

CurveTrace trace_circle_adaptive(const HarmonicMapSpec& map, double r, int n,
                                 double max_chord_rel, std::size_t max_points,
                                 const QuadratureConfig& cfg) {
  CurveTrace tr = trace_circle(map, r, n, cfg);
  tr.phi_prime.clear();
  tr.phi_second.clear();
  const double max_chord = max_chord_rel * tr.diameter();
  if (!(max_chord > 0.0)) return tr;

  for (;;) {
    const std::size_t m = tr.t.size();
    std::vector<double> mids;
    std::vector<std::size_t> after;
    for (std::size_t i = 0; i < m && m + mids.size() < max_points; ++i) {
      const std::size_t j = (i + 1 == m) ? 0 : i + 1;
      const double tb = (j == 0) ? kPi : tr.t[j];
      if (std::abs(tr.points[j] - tr.points[i]) > max_chord && tb - tr.t[i] > 1e-12) {
        mids.push_back(0.5 * (tr.t[i] + tb));
        after.push_back(i);
      }
    }
    if (mids.empty()) break;
    std::vector<cplx> zs(mids.size());
    for (std::size_t k = 0; k < mids.size(); ++k) zs[k] = std::polar(r, mids[k]);
    std::vector<bool> flags;
    const std::vector<cplx> vals = eval_f_many(map, zs, cfg, &flags);

    std::vector<double> t2;
    std::vector<cplx> p2;
    std::vector<bool> c2;
    t2.reserve(m + mids.size());
    p2.reserve(m + mids.size());
    c2.reserve(m + mids.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) {
      t2.push_back(tr.t[i]);
      p2.push_back(tr.points[i]);
      c2.push_back(tr.clamped[i]);
      if (k < after.size() && after[k] == i) {
        t2.push_back(mids[k]);
        p2.push_back(vals[k]);
        c2.push_back(flags[k]);
        ++k;
      }
    }
    tr.t = std::move(t2);
    tr.points = std::move(p2);
    tr.clamped = std::move(c2);
    if (tr.t.size() >= max_points) break;
  }
  return tr;
}

void write_trace_csv(const CurveTrace& trace, std::ostream& os) {
  os << "t,re_f,im_f,clamped\n";
  char buf[128];
  for (std::size_t j = 0; j < trace.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", trace.t[j],
                  trace.points[j].real(), trace.points[j].imag(),
                  trace.clamped[j] ? 1 : 0);
    os << buf;
  }
}

cplx eval_phi_prime(const HarmonicMapSpec& map, double t) {
  const cplx z = std::polar(1.0, t);
  const cplx hp = eval_h_prime(map.h(), z);
  return cplx(0.0, 1.0) * z * (hp - conj_pow(z, map.m() + 1) * std::conj(hp));
}

cplx eval_phi_second(const HarmonicMapSpec& map, double t) {
  const cplx z = std::polar(1.0, t);
  const cplx hp = eval_h_prime(map.h(), z);
  const cplx hpp = eval_h_second(map.h(), z);
  const int m = map.m();
  return -(z * hp + z * z * hpp + static_cast<double>(m) * conj_pow(z, m) * std::conj(hp) +
           conj_pow(z, m + 1) * std::conj(hpp));
}

ConcavityReport concavity_check(const HarmonicMapSpec& map, int n) {
  if (n < 1) throw ParameterError("concavity_check needs samples");
  const std::vector<double> ts = uniform_ts(n);
  const int m = map.m();
  struct Row {
    bool ok = false;
    double lhs = 0.0, rhs = 0.0, dphi = 0.0, ddphi = 0.0;
  };
  std::vector<Row> rows(ts.size());
  parallel_for(ts.size(), [&](std::size_t j) {
    Row& row = rows[j];
    const double t = ts[j];
    const cplx z = std::polar(1.0, t);
    cplx hp;
    try {
      hp = eval_h_prime(map.h(), z);
    } catch (const PoleError&) {
      return;
    }
    if (hp == 0.0) return;
    const cplx d1 = eval_phi_prime(map, t);
    const cplx d2 = eval_phi_second(map, t);
    const double ahp = std::abs(hp);
    const cplx u = std::conj(hp) / ahp;
    row.lhs = (d2 * std::conj(d1)).imag();
    row.rhs = (m - 1.0) * ahp * ahp * (conj_pow(z, m + 1) * u * u - 1.0).real();
    row.dphi = std::abs(d1);
    row.ddphi = std::abs(d2);
    row.ok = true;
  });

  ConcavityReport rep;
  rep.samples = rows.size();
  double max_d1 = 0.0, max_d2 = 0.0;
  rep.max_im = -std::numeric_limits<double>::infinity();
  for (const Row& row : rows) {
    if (!row.ok) {
      ++rep.skipped;
      continue;
    }
    rep.max_im = std::max(rep.max_im, row.lhs);
    const double diff = std::abs(row.lhs - row.rhs);
    rep.max_identity_abs = std::max(rep.max_identity_abs, diff);
    rep.max_identity_rel =
        std::max(rep.max_identity_rel, diff / std::max(1.0, row.dphi * row.ddphi));
    max_d1 = std::max(max_d1, row.dphi);
    max_d2 = std::max(max_d2, row.ddphi);
  }
  rep.scale = max_d1 * max_d2;
  rep.tolerance = 1e-9 * rep.scale;
  rep.pass = rep.skipped < rep.samples && rep.max_im <= rep.tolerance;
  return rep;
}

namespace {

double max_phi_prime(const HarmonicMapSpec& map, int n) {
  const std::vector<double> ts = uniform_ts(n);
  std::vector<double> a(ts.size(), 0.0);
  parallel_for(ts.size(), [&](std::size_t j) {
    try {
      a[j] = std::abs(eval_phi_prime(map, ts[j]));
    } catch (const PoleError&) {
      a[j] = 0.0;
    }
  });
  return *std::max_element(a.begin(), a.end());
}

}  // namespace

CuspSet detect_cusps(const HarmonicMapSpec& map, const CriterionReport& report,
                     const CuspConfig& cfg, bool override_gate) {
  if (!report.theorem_applies && !override_gate) {
    throw HypothesisError("criterion does not apply; cusp detection needs an override");
  }
  CuspSet set;
  if (!report.theorem_applies) {
    set.warnings.push_back("criterion does not apply; cusps taken as-is");
  }
  if (report.roots.empty()) {
    set.warnings.push_back("no criterion roots available");
    return set;
  }
  const double tol = cfg.rel_tol * max_phi_prime(map, cfg.grid_size);
  for (const RootRecord& r : report.roots) {
    const double a = std::abs(eval_phi_prime(map, r.t));
    if (!(a < tol)) {
      throw InconsistencyError("criterion root at t = " + std::to_string(r.t) +
                               " is not a zero of phi' (|phi'| = " + std::to_string(a) + ")");
    }
    set.cusps.push_back({r.t, eval_f(map, std::polar(1.0, r.t), cfg.quadrature), r.k});
  }
  std::sort(set.cusps.begin(), set.cusps.end(),
            [](const Cusp& a, const Cusp& b) { return a.t < b.t; });
  return set;
}

std::vector<double> find_phi_prime_zeros(const HarmonicMapSpec& map,
                                         const CuspConfig& cfg) {
  const int n = cfg.grid_size;
  const std::vector<double> ts = uniform_ts(n);
  std::vector<double> a(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) a[j] = std::abs(eval_phi_prime(map, ts[j]));
  const double amax = *std::max_element(a.begin(), a.end());
  const double tol = cfg.rel_tol * amax;
  auto absd = [&](double t) { return std::abs(eval_phi_prime(map, t)); };

  std::vector<double> zeros;
  const std::size_t N = ts.size();
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t jl = (j == 0) ? N - 1 : j - 1;
    const std::size_t jr = (j + 1 == N) ? 0 : j + 1;
    if (a[j] > a[jl] || a[j] > a[jr] || a[j] > 0.1 * amax) continue;
    double lo = ts[j] - 2.0 * kPi / n;
    double hi = ts[j] + 2.0 * kPi / n;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = absd(c), fd = absd(d);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - gr * (hi - lo);
        fc = absd(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + gr * (hi - lo);
        fd = absd(d);
      }
    }
    double tbest = fc < fd ? c : d;
    double fbest = std::min(fc, fd);
    if (a[j] < fbest) {
      tbest = ts[j];
      fbest = a[j];
    }
    if (fbest < tol) zeros.push_back(to_range(tbest));
  }
  std::sort(zeros.begin(), zeros.end());
  std::vector<double> uniq;
  for (double z : zeros) {
    if (uniq.empty() || z - uniq.back() > 1e-9) uniq.push_back(z);
  }
  if (uniq.size() > 1 && uniq.front() + 2.0 * kPi - uniq.back() <= 1e-9) uniq.pop_back();
  return uniq;
}

std::vector<double> straight_side_breakpoints(const HarmonicMapSpec& map) {
  std::vector<double> poles;
  for (const cplx& p : map.h().boundary_poles()) poles.push_back(std::arg(p));
  std::sort(poles.begin(), poles.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const double a = poles[i];
    const double b = (i + 1 == poles.size()) ? poles[0] + 2.0 * kPi : poles[i + 1];
    out.push_back(to_range(0.5 * (a + b)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double segment_collinearity(const CurveTrace& trace,
                            const std::vector<double>& breakpoints) {
  if (breakpoints.empty()) throw ParameterError("no breakpoints given");
  std::vector<double> b;
  for (double x : breakpoints) b.push_back(to_range(x));
  std::sort(b.begin(), b.end());
  const double diam = trace.diameter();
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double lo = b[i];
    const double hi = (i + 1 == b.size()) ? b[0] + 2.0 * kPi : b[i + 1];
    // Samples with lo < t < hi, in order along the arc.
    std::vector<cplx> arc;
    for (int pass = 0; pass < 2; ++pass) {
      const double shift = pass * 2.0 * kPi;
      for (std::size_t j = 0; j < trace.size(); ++j) {
        const double t = trace.t[j] + shift;
        if (t > lo && t < hi) arc.push_back(trace.points[j]);
      }
    }
    if (arc.size() < 3) {
      throw ResolutionError("arc " + std::to_string(i) + " has fewer than 3 samples");
    }
    const cplx a = arc.front();
    const cplx dir = arc.back() - a;
    const double len = std::abs(dir);
    for (std::size_t j = 1; j + 1 < arc.size(); ++j) {
      const double dist = len > 0.0 ? std::abs((std::conj(dir) * (arc[j] - a)).imag()) / len
                                    : std::abs(arc[j] - a);
      worst = std::max(worst, dist / diam);
    }
  }
  return worst;
}

}  // namespace hvl
