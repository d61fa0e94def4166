#include "hvl/valence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hvl/kernels.hpp"
#include "hvl/parallel.hpp"

namespace hvl {

namespace {

constexpr double kPi = std::numbers::pi;

double point_segment_dist(cplx w, cplx a, cplx b) {
  const cplx e = b - a;
  const double len2 = std::norm(e);
  double t = len2 > 0.0 ? ((w - a) * std::conj(e)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(a + t * e - w);
}

struct Polyline {
  std::vector<double> xs;
  std::vector<double> ys;
  explicit Polyline(const CurveTrace& trace) : xs(trace.size()), ys(trace.size()) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
      xs[i] = trace.points[i].real();
      ys[i] = trace.points[i].imag();
    }
  }
  kernels::PolylineScan scan(cplx w) const {
    return kernels::scan_closed_polyline(xs, ys, w.real(), w.imag());
  }
};

kernels::PolylineScan scan(const CurveTrace& trace, cplx w) { return Polyline(trace).scan(w); }

}  // namespace

WindingResult winding_number(const CurveTrace& trace, cplx w, double probe_clearance) {
  const std::size_t n = trace.size();
  if (n < 3) throw ParameterError("winding_number needs a closed trace");
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw ParameterError("probe must be finite");
  }
  WindingResult res;
  res.w = w;
  res.min_curve_distance = std::sqrt(scan(trace, w).min_dist2);
  if (!(res.min_curve_distance > probe_clearance)) {
    throw IndeterminateProbe("probe lies within the clearance of the curve");
  }

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1 == n) ? 0 : i + 1;
    const cplx a = trace.points[i] - w;
    const cplx b = trace.points[j] - w;
    const double d = std::arg(b * std::conj(a));
    if (std::abs(d) < 0.5 * kPi) {
      total += d;
      continue;
    }
    if (!trace.map) {
      throw ResolutionError("trace turns too fast about the probe and cannot be refined");
    }
    const double ta = trace.t[i];
    const double tb = (j == 0) ? trace.t[0] + 2.0 * kPi : trace.t[j];
    cplx prev = trace.points[i];
    for (int k = 1; k <= 4; ++k) {
      const cplx next = (k == 4) ? trace.points[j]
                                 : eval_f(*trace.map,
                                          std::polar(trace.radius, ta + (tb - ta) * k / 4.0),
                                          trace.quadrature);
      const double dk = std::arg((next - w) * std::conj(prev - w));
      if (std::abs(dk) >= 0.5 * kPi) {
        throw ResolutionError("trace turns by pi/2 or more about the probe after 4x refinement");
      }
      res.min_curve_distance = std::min(res.min_curve_distance, point_segment_dist(w, prev, next));
      total += dk;
      prev = next;
    }
  }
  if (!(res.min_curve_distance > probe_clearance)) {
    throw IndeterminateProbe("probe lies within the clearance of the curve");
  }
  res.winding = static_cast<int>(std::lround(total / (2.0 * kPi)));
  return res;
}

namespace {

std::optional<int> probe_winding(const CurveTrace& trace, const Polyline& line, cplx w,
                                 double probe_clearance) {
  const kernels::PolylineScan s = line.scan(w);
  if (!(std::sqrt(s.min_dist2) > probe_clearance)) return std::nullopt;
  if (s.blocked == 0) return static_cast<int>(s.crossings);
  try {
    return winding_number(trace, w, probe_clearance).winding;
  } catch (const IndeterminateProbe&) {
    return std::nullopt;
  } catch (const ResolutionError&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<int> probe_winding(const CurveTrace& trace, cplx w, double probe_clearance) {
  return probe_winding(trace, Polyline(trace), w, probe_clearance);
}

CurveTrace valence_trace(const HarmonicMapSpec& map, double r, const ValenceConfig& cfg) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("valence radius must lie in (0, 1)");
  return trace_circle_adaptive(map, r, cfg.trace_samples, cfg.max_chord_rel,
                               cfg.max_trace_points, cfg.quadrature);
}

ValenceReport valence_scan(const HarmonicMapSpec& map, double r, int grid_w, int grid_h,
                           const ValenceConfig& cfg) {
  if (grid_w < 1 || grid_h < 1) throw ParameterError("probe grid must be non-empty");
  const CurveTrace trace = valence_trace(map, r, cfg);
  const double clearance = cfg.clearance_rel * trace.diameter();

  ValenceReport rep;
  rep.radius = r;
  rep.grid_w = grid_w;
  rep.grid_h = grid_h;
  rep.p = map.p();
  double x0 = trace.points[0].real(), x1 = x0, y0 = trace.points[0].imag(), y1 = y0;
  for (const cplx& q : trace.points) {
    x0 = std::min(x0, q.real());
    x1 = std::max(x1, q.real());
    y0 = std::min(y0, q.imag());
    y1 = std::max(y1, q.imag());
  }
  const double px = 0.1 * (x1 - x0), py = 0.1 * (y1 - y0);
  rep.box_min_re = x0 - px;
  rep.box_max_re = x1 + px;
  rep.box_min_im = y0 - py;
  rep.box_max_im = y1 + py;
  const double dx = (rep.box_max_re - rep.box_min_re) / grid_w;
  const double dy = (rep.box_max_im - rep.box_min_im) / grid_h;

  const auto total = static_cast<std::size_t>(grid_w) * static_cast<std::size_t>(grid_h);
  std::vector<std::optional<int>> wind(total);
  std::vector<cplx> probes(total);
  const Polyline line(trace);
  parallel_for(total, [&](std::size_t idx) {
    const auto iy = static_cast<int>(idx / static_cast<std::size_t>(grid_w));
    const auto ix = static_cast<int>(idx % static_cast<std::size_t>(grid_w));
    const cplx w(rep.box_min_re + (ix + 0.5) * dx, rep.box_min_im + (iy + 0.5) * dy);
    probes[idx] = w;
    wind[idx] = probe_winding(trace, line, w, clearance);
  });

  for (std::size_t idx = 0; idx < total; ++idx) {
    if (!wind[idx]) {
      ++rep.indeterminate;
      continue;
    }
    WindingResult wr;
    wr.w = probes[idx];
    wr.winding = *wind[idx];
    rep.results.push_back(wr);
  }
  if (static_cast<double>(rep.indeterminate) > cfg.max_indeterminate_fraction * static_cast<double>(total)) {
    throw Error("scan quality: " + std::to_string(rep.indeterminate) + " of " +
                std::to_string(total) + " probes are indeterminate");
  }
  for (const auto& wr : rep.results) rep.max_valence = std::max(rep.max_valence, wr.winding);
  for (const auto& wr : rep.results) {
    if (wr.winding == rep.max_valence) rep.attained_at.push_back(wr.w);
  }
  rep.consistent_with_p = rep.max_valence == rep.p;
  return rep;
}

namespace {

double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

struct NewtonOutcome {
  bool converged = false;
  cplx z;
  double residual = 0.0;
};

NewtonOutcome newton_solve(const HarmonicMapSpec& map, cplx w, cplx z0,
                           const NewtonConfig& cfg, double max_modulus) {
  NewtonOutcome out;
  cplx z = z0;
  cplx r;
  try {
    r = eval_f(map, z, cfg.quadrature) - w;
  } catch (const Error&) {
    return out;
  }
  double res = std::abs(r);
  for (int it = 0; it < cfg.max_iterations && res > 0.0; ++it) {
    cplx a, b;
    try {
      a = eval_h_prime(map.h(), z);
      b = std::conj(eval_g_prime(map, z));
    } catch (const Error&) {
      break;
    }
    const double det = std::norm(a) - std::norm(b);
    if (!(det > 0.0) || !std::isfinite(det)) break;
    const cplx c = -r;
    const cplx step = (std::conj(a) * c - b * std::conj(c)) / det;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;

    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= cfg.max_halvings; ++h, lambda *= 0.5) {
      const cplx zn = z + lambda * step;
      if (!(std::abs(zn) < max_modulus)) continue;
      cplx rn;
      try {
        rn = eval_f(map, zn, cfg.quadrature) - w;
      } catch (const Error&) {
        continue;
      }
      if (std::abs(rn) < res) {
        z = zn;
        r = rn;
        res = std::abs(rn);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    if (std::abs(lambda * step) < 1e-15 * std::max(1.0, std::abs(z))) break;
  }
  out.z = z;
  out.residual = res;
  out.converged = res < cfg.newton_tol;
  return out;
}

}  // namespace

PreimageSet newton_preimages(const HarmonicMapSpec& map, cplx w, int starts,
                             const NewtonConfig& cfg) {
  if (starts < 1) throw ParameterError("starts must be positive");
  PreimageSet set;
  set.w = w;
  set.starts = starts;

  const double R = cfg.start_radius;
  std::vector<cplx> z0;
  for (std::uint64_t idx = static_cast<std::uint64_t>(cfg.seed) + 1;
       z0.size() < static_cast<std::size_t>(starts); ++idx) {
    const cplx z((2.0 * halton(idx, 2) - 1.0) * R, (2.0 * halton(idx, 3) - 1.0) * R);
    if (std::abs(z) < R) z0.push_back(z);
  }
  const double max_modulus = map.h().has_boundary_poles()
                                 ? 1.0 - 2.0 * cfg.quadrature.boundary_epsilon
                                 : 1.0 - 1e-9;

  std::vector<NewtonOutcome> outcomes(z0.size());
  parallel_for(z0.size(), [&](std::size_t i) {
    outcomes[i] = newton_solve(map, w, z0[i], cfg, max_modulus);
  });

  for (const NewtonOutcome& o : outcomes) {
    if (!o.converged) continue;
    ++set.converged;
    bool merged = false;
    for (Preimage& pre : set.roots) {
      if (std::abs(pre.z - o.z) <= cfg.dedupe_radius) {
        if (o.residual < pre.residual) {
          pre.z = o.z;
          pre.residual = o.residual;
        }
        merged = true;
        break;
      }
    }
    if (!merged) set.roots.push_back({o.z, o.residual, 0.0});
  }
  for (Preimage& pre : set.roots) {
    const double hp = std::norm(eval_h_prime(map.h(), pre.z));
    const double gp = std::norm(eval_g_prime(map, pre.z));
    pre.jacobian = hp - gp;
  }
  std::sort(set.roots.begin(), set.roots.end(), [](const Preimage& a, const Preimage& b) {
    return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
  });
  return set;
}

std::string to_string(CrossCheck c) {
  switch (c) {
    case CrossCheck::agree:
      return "agree";
    case CrossCheck::disagree:
      return "disagree";
    case CrossCheck::indeterminate_multiplicity:
      return "indeterminate-multiplicity";
  }
  return "unknown";
}

CrossCheckResult cross_check(const HarmonicMapSpec& map, const CurveTrace& trace, cplx w,
                             const ValenceConfig& vcfg, const NewtonConfig& ncfg,
                             int starts) {
  CrossCheckResult res;
  const double clearance = vcfg.clearance_rel * trace.diameter();
  const auto wind = probe_winding(trace, w, clearance);
  if (!wind) throw IndeterminateProbe("probe is indeterminate for the traced circle");
  res.winding = *wind;
  res.preimages = newton_preimages(map, w, starts, ncfg);
  bool degenerate = false;
  for (const Preimage& pre : res.preimages.roots) {
    if (std::abs(pre.z) < trace.radius) {
      ++res.preimages_inside;
      if (!(pre.jacobian > 1e-12)) degenerate = true;
    }
  }
  if (degenerate) {
    res.status = CrossCheck::indeterminate_multiplicity;
  } else {
    res.status = res.winding == res.preimages_inside ? CrossCheck::agree : CrossCheck::disagree;
  }
  return res;
}

CrossCheckResult cross_check(const HarmonicMapSpec& map, cplx w, double r,
                             const ValenceConfig& vcfg, const NewtonConfig& ncfg,
                             int starts) {
  return cross_check(map, valence_trace(map, r, vcfg), w, vcfg, ncfg, starts);
}

}  // namespace hvl
