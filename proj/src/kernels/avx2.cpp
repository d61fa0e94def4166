#include "hvl/kernels.hpp"

#include <immintrin.h>

#include <bit>
#include <cassert>
#include <limits>

#include "edge.hpp"

namespace hvl::kernels::avx2 {

void horner(std::span<const double> c_re, std::span<const double> c_im,
            std::span<const double> z_re, std::span<const double> z_im,
            std::span<double> out_re, std::span<double> out_im) {
  assert(c_re.size() == c_im.size());
  assert(z_re.size() == z_im.size() && out_re.size() == z_re.size() &&
         out_im.size() == z_re.size());
  const std::size_t nc = c_re.size();
  const std::size_t n = z_re.size();
  if (nc == 0) {
    for (std::size_t j = 0; j < n; ++j) out_re[j] = out_im[j] = 0.0;
    return;
  }
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d zr = _mm256_loadu_pd(z_re.data() + j);
    const __m256d zi = _mm256_loadu_pd(z_im.data() + j);
    __m256d ar = _mm256_set1_pd(c_re[nc - 1]);
    __m256d ai = _mm256_set1_pd(c_im[nc - 1]);
    for (std::size_t k = nc - 1; k-- > 0;) {
      const __m256d nr = _mm256_add_pd(
          _mm256_sub_pd(_mm256_mul_pd(ar, zr), _mm256_mul_pd(ai, zi)),
          _mm256_set1_pd(c_re[k]));
      const __m256d ni = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(ar, zi), _mm256_mul_pd(ai, zr)),
          _mm256_set1_pd(c_im[k]));
      ar = nr;
      ai = ni;
    }
    _mm256_storeu_pd(out_re.data() + j, ar);
    _mm256_storeu_pd(out_im.data() + j, ai);
  }
  if (j < n) {
    scalar::horner(c_re, c_im, z_re.subspan(j), z_im.subspan(j),
                   out_re.subspan(j), out_im.subspan(j));
  }
}

PolylineScan scan_closed_polyline(std::span<const double> xs,
                                  std::span<const double> ys, double wx,
                                  double wy) {
  assert(xs.size() == ys.size());
  const std::size_t n = xs.size();
  PolylineScan s;
  if (n == 0) return s;

  const __m256d vwx = _mm256_set1_pd(wx);
  const __m256d vwy = _mm256_set1_pd(wy);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d vmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  long crossings = 0;
  std::size_t blocked = 0;

  std::size_t i = 0;
  for (; i + 5 <= n; i += 4) {
    const __m256d ax = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + i), vwx);
    const __m256d ay = _mm256_sub_pd(_mm256_loadu_pd(ys.data() + i), vwy);
    const __m256d bx = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + i + 1), vwx);
    const __m256d by = _mm256_sub_pd(_mm256_loadu_pd(ys.data() + i + 1), vwy);

    const __m256d dot =
        _mm256_add_pd(_mm256_mul_pd(ax, bx), _mm256_mul_pd(ay, by));
    const int open = _mm256_movemask_pd(_mm256_cmp_pd(dot, zero, _CMP_GT_OQ));
    blocked += 4 - static_cast<std::size_t>(std::popcount(
                       static_cast<unsigned>(open)));

    const __m256d is_left =
        _mm256_sub_pd(_mm256_mul_pd(ax, by), _mm256_mul_pd(ay, bx));
    const __m256d up = _mm256_and_pd(
        _mm256_and_pd(_mm256_cmp_pd(ay, zero, _CMP_LE_OQ),
                      _mm256_cmp_pd(by, zero, _CMP_GT_OQ)),
        _mm256_cmp_pd(is_left, zero, _CMP_GT_OQ));
    const __m256d down = _mm256_and_pd(
        _mm256_and_pd(_mm256_cmp_pd(ay, zero, _CMP_GT_OQ),
                      _mm256_cmp_pd(by, zero, _CMP_LE_OQ)),
        _mm256_cmp_pd(is_left, zero, _CMP_LT_OQ));
    crossings += std::popcount(static_cast<unsigned>(_mm256_movemask_pd(up)));
    crossings -=
        std::popcount(static_cast<unsigned>(_mm256_movemask_pd(down)));

    const __m256d ex = _mm256_sub_pd(bx, ax);
    const __m256d ey = _mm256_sub_pd(by, ay);
    const __m256d len2 =
        _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey));
    const __m256d num = _mm256_xor_pd(
        _mm256_add_pd(_mm256_mul_pd(ax, ex), _mm256_mul_pd(ay, ey)), sign);
    const __m256d nonzero = _mm256_cmp_pd(len2, zero, _CMP_GT_OQ);
    __m256d t = _mm256_blendv_pd(zero, _mm256_div_pd(num, len2), nonzero);
    t = _mm256_max_pd(t, zero);
    t = _mm256_min_pd(t, one);
    const __m256d px = _mm256_add_pd(ax, _mm256_mul_pd(t, ex));
    const __m256d py = _mm256_add_pd(ay, _mm256_mul_pd(t, ey));
    const __m256d d2 =
        _mm256_add_pd(_mm256_mul_pd(px, px), _mm256_mul_pd(py, py));
    vmin = _mm256_min_pd(vmin, d2);
  }

  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmin);
  double min_dist2 = lanes[0];
  for (int l = 1; l < 4; ++l) min_dist2 = std::min(min_dist2, lanes[l]);

  for (; i < n; ++i) {
    const std::size_t j = (i + 1 == n) ? 0 : i + 1;
    const detail::EdgeTally e =
        detail::edge(xs[i] - wx, ys[i] - wy, xs[j] - wx, ys[j] - wy);
    crossings += e.crossing;
    blocked += e.blocked ? 1 : 0;
    min_dist2 = std::min(min_dist2, e.dist2);
  }
  s.crossings = crossings;
  s.blocked = blocked;
  s.min_dist2 = min_dist2;
  return s;
}

}  // namespace hvl::kernels::avx2
