#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64, an AVX2 version that performs the same floating-point operations
// in the same order, so both produce bit-identical results. The active
// implementation is chosen once at runtime from CPU features and can be
// forced with HVL_SIMD=scalar|avx2.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace hvl::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// True when the binary carries the AVX2 kernels and the CPU supports them.
bool isa_available(Isa isa);

/// The implementation dispatched to by the public kernel entry points.
Isa active_isa();

/// Test hook. Passing an unavailable ISA is ignored.
void force_isa(std::optional<Isa> isa);

/// Complex polynomial evaluation by Horner's scheme at many points.
/// Coefficients are ascending (c[0] is the constant term), split into
/// real/imaginary arrays; points and outputs likewise.
void horner(std::span<const double> c_re, std::span<const double> c_im,
            std::span<const double> z_re, std::span<const double> z_im,
            std::span<double> out_re, std::span<double> out_im);

/// Result of walking a closed polyline around a probe point.
struct PolylineScan {
  long crossings = 0;       // signed crossing count (winding of the polygon)
  std::size_t blocked = 0;  // edges whose angle increment is >= pi/2
  double min_dist2 = 0.0;   // squared distance from probe to the polyline
};

/// Walks the closed polyline (xs[i], ys[i]) -> (xs[i+1], ys[i+1]), including
/// the closing edge, about the probe (wx, wy).
PolylineScan scan_closed_polyline(std::span<const double> xs,
                                  std::span<const double> ys, double wx,
                                  double wy);

namespace scalar {
void horner(std::span<const double> c_re, std::span<const double> c_im,
            std::span<const double> z_re, std::span<const double> z_im,
            std::span<double> out_re, std::span<double> out_im);
PolylineScan scan_closed_polyline(std::span<const double> xs,
                                  std::span<const double> ys, double wx,
                                  double wy);
}  // namespace scalar

namespace avx2 {
void horner(std::span<const double> c_re, std::span<const double> c_im,
            std::span<const double> z_re, std::span<const double> z_im,
            std::span<double> out_re, std::span<double> out_im);
PolylineScan scan_closed_polyline(std::span<const double> xs,
                                  std::span<const double> ys, double wx,
                                  double wy);
}  // namespace avx2

}  // namespace hvl::kernels
