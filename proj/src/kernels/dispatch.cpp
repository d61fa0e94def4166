#include <atomic>
#include <cstdlib>
#include <string>

#include "hvl/kernels.hpp"

namespace hvl::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(HVL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() {
  Isa best = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  if (const char* env = std::getenv("HVL_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return best;
}

// -1: not yet detected.
std::atomic<int> g_isa{-1};

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  return isa == Isa::scalar || cpu_has_avx2();
}

Isa active_isa() {
  int v = g_isa.load(std::memory_order_relaxed);
  if (v < 0) {
    v = static_cast<int>(detect());
    g_isa.store(v, std::memory_order_relaxed);
  }
  return static_cast<Isa>(v);
}

void force_isa(std::optional<Isa> isa) {
  if (!isa) {
    g_isa.store(static_cast<int>(detect()), std::memory_order_relaxed);
  } else if (isa_available(*isa)) {
    g_isa.store(static_cast<int>(*isa), std::memory_order_relaxed);
  }
}

void horner(std::span<const double> c_re, std::span<const double> c_im,
            std::span<const double> z_re, std::span<const double> z_im,
            std::span<double> out_re, std::span<double> out_im) {
#if defined(HVL_HAVE_AVX2)
  if (active_isa() == Isa::avx2) {
    avx2::horner(c_re, c_im, z_re, z_im, out_re, out_im);
    return;
  }
#endif
  scalar::horner(c_re, c_im, z_re, z_im, out_re, out_im);
}

PolylineScan scan_closed_polyline(std::span<const double> xs,
                                  std::span<const double> ys, double wx,
                                  double wy) {
#if defined(HVL_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::scan_closed_polyline(xs, ys, wx, wy);
#endif
  return scalar::scan_closed_polyline(xs, ys, wx, wy);
}

}  // namespace hvl::kernels
