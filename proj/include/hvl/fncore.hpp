#pragma once

// Analytic part h, co-analytic part g with g'(z) = z^(m-1) h'(z), and the
// harmonic map f = h + conj(g) on the closed unit disk.

#include <complex>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hvl/errors.hpp"
#include "hvl/polynomial.hpp"
#include "hvl/quadrature.hpp"

namespace hvl {

/// h(z) = sum_{n=p}^{N} a_n z^n with a_p = 1. coeffs[0] is a_p.
struct PolySeries {
  int p = 1;
  std::vector<cplx> coeffs;
  friend bool operator==(const PolySeries&, const PolySeries&) = default;
};

/// h'(z) = numer(z) / denom(z), h(0) = 0.
struct RationalDeriv {
  int p = 1;
  Polynomial numer;
  Polynomial denom;
  friend bool operator==(const RationalDeriv&, const RationalDeriv&) = default;
};

/// Validated analytic part. Immutable; cheap to copy.
class FunctionSpec {
 public:
  /// Throws ParameterError unless p >= 1, coeffs is non-empty and a_p == 1.
  static FunctionSpec poly_series(int p, std::vector<cplx> coeffs);
  /// Throws ParameterError unless numer = z^(p-1) * (unit at 0),
  /// numer[p-1] / denom[0] == p (so h = z^p + ...), and denom has no zero in
  /// the open unit disk.
  static FunctionSpec rational_deriv(int p, Polynomial numer, Polynomial denom);

  int p() const { return p_; }
  bool is_series() const { return std::holds_alternative<PolySeries>(rep_); }
  const PolySeries* series() const { return std::get_if<PolySeries>(&rep_); }
  const RationalDeriv* rational() const { return std::get_if<RationalDeriv>(&rep_); }

  /// Series only: h as a dense polynomial (coefficient of z^n at index n).
  const Polynomial& h_poly() const { return h_; }
  /// Series: h'. Rational: numer.
  const Polynomial& hp_numer() const { return hp_; }
  /// Series: h''. Rational: numer' * denom - numer * denom'.
  const Polynomial& hpp_numer() const { return hpp_; }
  /// Rational only.
  const Polynomial& denom() const { return den_; }
  /// Numerator of H(z) = h'(z) / z^(p-1) (the denominator is denom()).
  const Polynomial& H_numer() const { return H_; }

  /// Zeros of denom on the unit circle (projected onto it).
  const std::vector<cplx>& boundary_poles() const { return boundary_poles_; }
  bool has_boundary_poles() const { return !boundary_poles_.empty(); }

  friend bool operator==(const FunctionSpec& a, const FunctionSpec& b) {
    return a.rep_ == b.rep_;
  }

 private:
  FunctionSpec() = default;
  void derive();

  std::variant<PolySeries, RationalDeriv> rep_;
  int p_ = 1;
  Polynomial h_;
  Polynomial hp_;
  Polynomial hpp_;
  Polynomial den_;
  Polynomial H_;
  std::vector<cplx> boundary_poles_;
};

/// f = h + conj(g). For series h, g is the explicit polynomial with
/// coefficient n / (n + m - 1) * a_n at exponent n + m - 1.
class HarmonicMapSpec {
 public:
  HarmonicMapSpec(FunctionSpec h, int m);

  const FunctionSpec& h() const { return h_; }
  int m() const { return m_; }
  int p() const { return h_.p(); }
  /// 2p + m - 1, the number of boundary cusps when the criterion holds.
  int cusp_count() const { return 2 * h_.p() + m_ - 1; }
  /// Series h only.
  const std::optional<Polynomial>& g_series() const { return g_; }

 private:
  FunctionSpec h_;
  int m_;
  std::optional<Polynomial> g_;
};

/// Outcome of pulling a request away from a boundary pole.
struct ClampedPoint {
  cplx z;
  bool clamped = false;
};

/// Throws DomainError for |z| > 1. For specs with boundary poles, a point
/// with |z| > 1 - eps whose angle lies within 10 eps of a pole angle is moved
/// radially to |z| = 1 - eps and flagged.
ClampedPoint clamp_to_disk(const FunctionSpec& spec, cplx z,
                           const QuadratureConfig& cfg);

cplx eval_h(const FunctionSpec& spec, cplx z, const QuadratureConfig& cfg = {});
cplx eval_h_prime(const FunctionSpec& spec, cplx z);
cplx eval_h_second(const FunctionSpec& spec, cplx z);

/// Throws ParameterError when m < 2.
HarmonicMapSpec derive_g(const FunctionSpec& h, int m);

cplx eval_g(const HarmonicMapSpec& map, cplx z, const QuadratureConfig& cfg = {});
cplx eval_g_prime(const HarmonicMapSpec& map, cplx z);
cplx eval_f(const HarmonicMapSpec& map, cplx z, const QuadratureConfig& cfg = {});

/// h and g at one point, sharing a single quadrature for rational specs.
struct MapValue {
  cplx h;
  cplx g;
  bool clamped = false;
  cplx f() const { return h + std::conj(g); }
};
MapValue eval_parts(const HarmonicMapSpec& map, cplx z,
                    const QuadratureConfig& cfg = {});

/// f at many points. Series maps go through the batch Horner kernel;
/// rational maps are evaluated pointwise in parallel. `clamped`, when
/// non-null, receives one flag per point.
std::vector<cplx> eval_f_many(const HarmonicMapSpec& map, std::span<const cplx> zs,
                              const QuadratureConfig& cfg = {},
                              std::vector<bool>* clamped = nullptr);

/// h' and h'' at many points (no clamping; poles raise PoleError).
void eval_h_derivs_many(const FunctionSpec& spec, std::span<const cplx> zs,
                        std::span<cplx> hp, std::span<cplx> hpp);

}  // namespace hvl
