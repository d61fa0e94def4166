#include "hvl/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "hvl/geometry.hpp"

namespace hvl {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

// Strips characters that would end an XML comment.
std::string comment_safe(std::string s) {
  for (std::size_t pos; (pos = s.find("--")) != std::string::npos;) s.replace(pos, 2, "- ");
  return s;
}

struct Curve {
  std::vector<cplx> pts;
  bool closed = false;
  std::string error;
};

bool all_finite(const std::vector<cplx>& pts) {
  return std::all_of(pts.begin(), pts.end(), [](cplx p) {
    return std::isfinite(p.real()) && std::isfinite(p.imag());
  });
}

Curve circle_curve(const HarmonicMapSpec& map, double r, int n, const QuadratureConfig& q) {
  Curve c;
  c.closed = true;
  try {
    std::vector<cplx> zs(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) zs[static_cast<std::size_t>(j)] = std::polar(r, -kPi + 2.0 * kPi * j / n);
    c.pts = eval_f_many(map, zs, q);
    if (!all_finite(c.pts)) {
      c.pts.clear();
      c.error = "non-finite samples on circle r = " + num(r);
    }
  } catch (const std::exception& e) {
    c.pts.clear();
    c.error = "circle r = " + num(r) + ": " + e.what();
  }
  return c;
}

Curve ray_curve(const HarmonicMapSpec& map, double theta, double rmax, int n,
                const QuadratureConfig& q) {
  Curve c;
  try {
    std::vector<cplx> zs(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      zs[static_cast<std::size_t>(j)] = std::polar(rmax * j / (n - 1), theta);
    }
    c.pts = eval_f_many(map, zs, q);
    if (!all_finite(c.pts)) {
      c.pts.clear();
      c.error = "non-finite samples on ray theta = " + num(theta);
    }
  } catch (const std::exception& e) {
    c.pts.clear();
    c.error = "ray theta = " + num(theta) + ": " + e.what();
  }
  return c;
}

}  // namespace

void RenderOptions::validate() const {
  for (double r : circle_radii) {
    if (!(r > 0.0 && r < 1.0)) throw ParameterError("circle radii must lie in (0, 1)");
  }
  if (ray_count < 0) throw ParameterError("ray_count must be non-negative");
  if (samples_per_curve < 512) throw ParameterError("samples_per_curve must be >= 512");
  if (width < 1 || height < 1) throw ParameterError("canvas size must be positive");
  if (!(max_radius > 0.0 && max_radius < 1.0)) {
    throw ParameterError("max_radius must lie in (0, 1)");
  }
}

std::string render_scene(const HarmonicMapSpec& map, const CriterionReport* criterion,
                         const RenderOptions& opts) {
  opts.validate();
  const int n = opts.samples_per_curve;

  const Curve outer = circle_curve(map, opts.max_radius, n, opts.quadrature);
  std::vector<Curve> circles;
  for (double r : opts.circle_radii) circles.push_back(circle_curve(map, r, n, opts.quadrature));
  std::vector<Curve> rays;
  for (int k = 0; k < opts.ray_count; ++k) {
    rays.push_back(ray_curve(map, -kPi + 2.0 * kPi * k / opts.ray_count, opts.max_radius, n,
                             opts.quadrature));
  }

  // The outer curve fixes the view; fall back to every curve, then the unit box.
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  auto grow = [&](const Curve& c) {
    for (const cplx& p : c.pts) {
      x0 = std::min(x0, p.real());
      x1 = std::max(x1, p.real());
      y0 = std::min(y0, -p.imag());
      y1 = std::max(y1, -p.imag());
    }
  };
  grow(outer);
  if (!(x1 > x0)) {
    for (const auto& c : circles) grow(c);
    for (const auto& c : rays) grow(c);
  }
  if (!(x1 > x0) || !(y1 > y0)) {
    x0 = y0 = -1.0;
    x1 = y1 = 1.0;
  }
  const double padx = 0.05 * (x1 - x0), pady = 0.05 * (y1 - y0);
  x0 -= padx;
  x1 += padx;
  y0 -= pady;
  y1 += pady;
  const double units_per_px = std::max((x1 - x0) / opts.width, (y1 - y0) / opts.height);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opts.width
     << "\" height=\"" << opts.height << "\" viewBox=\"" << num(x0) << ' ' << num(y0) << ' '
     << num(x1 - x0) << ' ' << num(y1 - y0) << "\">\n";
  os << "<!-- p = " << map.p() << ", m = " << map.m() << " -->\n";
  os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0)
     << "\" height=\"" << num(y1 - y0) << "\" fill=\"" << opts.background << "\"/>\n";

  auto emit = [&](const Curve& c, const std::string& cls) {
    if (!c.error.empty()) {
      os << "<!-- broken path: " << comment_safe(c.error) << " -->\n";
      return;
    }
    os << "<path class=\"" << cls << "\" d=\"";
    for (std::size_t i = 0; i < c.pts.size(); ++i) {
      os << (i == 0 ? "M" : " L") << num(c.pts[i].real()) << ',' << num(-c.pts[i].imag());
    }
    if (c.closed) os << " Z";
    os << "\"/>\n";
  };

  os << "<g id=\"rays\" fill=\"none\" stroke=\"" << opts.ray_color << "\" stroke-width=\""
     << num(opts.grid_stroke * units_per_px) << "\">\n";
  for (const auto& c : rays) emit(c, "ray");
  os << "</g>\n";
  os << "<g id=\"circles\" fill=\"none\" stroke=\"" << opts.circle_color << "\" stroke-width=\""
     << num(opts.grid_stroke * units_per_px) << "\">\n";
  for (const auto& c : circles) emit(c, "circle");
  os << "</g>\n";
  os << "<g id=\"boundary\" fill=\"none\" stroke=\"" << opts.boundary_color
     << "\" stroke-width=\"" << num(opts.boundary_stroke * units_per_px) << "\">\n";
  emit(outer, "boundary");
  os << "</g>\n";

  if (opts.show_cusps && criterion && criterion->theorem_applies) {
    os << "<g id=\"cusps\" fill=\"" << opts.cusp_color << "\" stroke=\"none\">\n";
    for (const RootRecord& r : criterion->roots) {
      const cplx p = r.f_value_at_root;
      if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) continue;
      os << "<circle class=\"cusp\" cx=\"" << num(p.real()) << "\" cy=\"" << num(-p.imag())
         << "\" r=\"" << num(opts.cusp_radius * units_per_px) << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hvl
