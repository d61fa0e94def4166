#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "hvl/errors.hpp"

namespace hvl {

/// Tolerances for the adaptive quadrature behind rational h and g.
struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_depth = 40;
  /// Requests within this distance of a boundary pole are pulled in to
  /// radius 1 - boundary_epsilon.
  double boundary_epsilon = 1e-6;

  /// Throws ParameterError when a field is out of range.
  void validate() const;
};

inline void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0)) throw ParameterError("abs_tol must be positive");
  if (!(rel_tol > 0.0)) throw ParameterError("rel_tol must be positive");
  if (max_depth < 10) throw ParameterError("max_depth must be at least 10");
  if (!(boundary_epsilon > 0.0 && boundary_epsilon < 0.01)) {
    throw ParameterError("boundary_epsilon must lie in (0, 0.01)");
  }
}

namespace quad_detail {

// Gauss-Kronrod 7/15 nodes on [-1, 1] (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
using Vec = std::array<cplx, N>;

template <std::size_t N>
double norm_inf(const Vec<N>& v) {
  double m = 0.0;
  for (const cplx& c : v) m = std::max(m, std::abs(c));
  return m;
}

template <std::size_t N>
struct Segment {
  double a;
  double b;
  int depth;
  Vec<N> value;
  double error;
};

template <std::size_t N, class Fn>
Segment<N> gk15(const Fn& f, double a, double b, int depth) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Vec<N> fc = f(centre);
  Vec<N> kron{};
  Vec<N> gauss{};
  for (std::size_t i = 0; i < N; ++i) {
    kron[i] = kWgk[7] * fc[i];
    gauss[i] = kWg[3] * fc[i];
  }
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Vec<N> f1 = f(centre - dx);
    const Vec<N> f2 = f(centre + dx);
    for (std::size_t i = 0; i < N; ++i) {
      const cplx s = f1[i] + f2[i];
      kron[i] += kWgk[j] * s;
      if (j % 2 == 1) gauss[i] += kWg[j / 2] * s;
    }
  }
  Segment<N> seg{a, b, depth, {}, 0.0};
  Vec<N> diff{};
  for (std::size_t i = 0; i < N; ++i) {
    seg.value[i] = kron[i] * half;
    diff[i] = (kron[i] - gauss[i]) * half;
  }
  seg.error = norm_inf(diff);
  // Below this the G7/K15 difference is rounding noise.
  const double noise = 50.0 * std::numeric_limits<double>::epsilon() *
                       norm_inf(seg.value);
  if (seg.error < noise) seg.error = 0.0;
  return seg;
}

}  // namespace quad_detail

/// Integrates a vector of N complex-valued functions of one real variable
/// over [a, b] with globally adaptive Gauss-Kronrod 7/15 bisection. The
/// interval with the largest error estimate is split until the summed
/// estimate is within max(abs_tol, rel_tol * |I|). Splitting an interval at
/// max_depth raises QuadratureError carrying that interval's estimate.
template <std::size_t N, class Fn>
std::array<cplx, N> integrate(const Fn& f, double a, double b,
                              const QuadratureConfig& cfg) {
  using Seg = quad_detail::Segment<N>;
  auto worse = [](const Seg& x, const Seg& y) { return x.error < y.error; };
  std::vector<Seg> heap{quad_detail::gk15<N>(f, a, b, 0)};

  // Running sums are updated per split; before accepting, they are recomputed
  // exactly so rounding drift cannot end the loop early.
  auto exact = [&](std::array<cplx, N>& total) {
    total = {};
    double err = 0.0;
    for (const Seg& s : heap) {
      for (std::size_t i = 0; i < N; ++i) total[i] += s.value[i];
      err += s.error;
    }
    return err;
  };
  std::array<cplx, N> total{};
  double err = exact(total);

  constexpr std::size_t kMaxSegments = 20000;
  for (;;) {
    double target = std::max(cfg.abs_tol, cfg.rel_tol * quad_detail::norm_inf(total));
    if (err <= target) {
      err = exact(total);
      target = std::max(cfg.abs_tol, cfg.rel_tol * quad_detail::norm_inf(total));
      if (err <= target) return total;
    }

    std::pop_heap(heap.begin(), heap.end(), worse);
    const Seg worst = heap.back();
    if (worst.depth >= cfg.max_depth || heap.size() >= kMaxSegments) {
      throw QuadratureError("adaptive quadrature did not converge", worst.error,
                            worst.a, worst.b);
    }
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const Seg left = quad_detail::gk15<N>(f, worst.a, mid, worst.depth + 1);
    const Seg right = quad_detail::gk15<N>(f, mid, worst.b, worst.depth + 1);
    for (std::size_t i = 0; i < N; ++i) total[i] += (left.value[i] + right.value[i]) - worst.value[i];
    err += (left.error + right.error) - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
  }
}

}  // namespace hvl
