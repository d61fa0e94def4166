#include "hvl/kernels.hpp"

#include "edge.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace hvl::kernels::scalar {

void horner(std::span<const double> c_re, std::span<const double> c_im,
            std::span<const double> z_re, std::span<const double> z_im,
            std::span<double> out_re, std::span<double> out_im) {
  assert(c_re.size() == c_im.size());
  assert(z_re.size() == z_im.size() && out_re.size() == z_re.size() &&
         out_im.size() == z_re.size());
  const std::size_t nc = c_re.size();
  for (std::size_t j = 0; j < z_re.size(); ++j) {
    if (nc == 0) {
      out_re[j] = 0.0;
      out_im[j] = 0.0;
      continue;
    }
    const double zr = z_re[j];
    const double zi = z_im[j];
    double ar = c_re[nc - 1];
    double ai = c_im[nc - 1];
    for (std::size_t k = nc - 1; k-- > 0;) {
      const double nr = (ar * zr - ai * zi) + c_re[k];
      const double ni = (ar * zi + ai * zr) + c_im[k];
      ar = nr;
      ai = ni;
    }
    out_re[j] = ar;
    out_im[j] = ai;
  }
}


PolylineScan scan_closed_polyline(std::span<const double> xs,
                                  std::span<const double> ys, double wx,
                                  double wy) {
  assert(xs.size() == ys.size());
  PolylineScan s;
  const std::size_t n = xs.size();
  if (n == 0) {
    s.min_dist2 = 0.0;
    return s;
  }
  s.min_dist2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1 == n) ? 0 : i + 1;
    const detail::EdgeTally e =
        detail::edge(xs[i] - wx, ys[i] - wy, xs[j] - wx, ys[j] - wy);
    s.crossings += e.crossing;
    s.blocked += e.blocked ? 1 : 0;
    s.min_dist2 = std::min(s.min_dist2, e.dist2);
  }
  return s;
}

}  // namespace hvl::kernels::scalar
