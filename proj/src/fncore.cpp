#include "hvl/fncore.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hvl/parallel.hpp"

namespace hvl {

namespace {

constexpr double kDiskSlack = 1e-12;
constexpr double kCircleTol = 1e-8;

std::string fmt_c(cplx z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

void require_in_disk(cplx z) {
  if (!(std::abs(z) <= 1.0 + kDiskSlack)) {
    throw DomainError("point " + fmt_c(z) + " lies outside the closed unit disk");
  }
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}

// Denominator value with a relative vanishing test.
cplx checked_denom(const FunctionSpec& spec, cplx z) {
  const cplx d = spec.denom()(z);
  const double scale = spec.denom().abs_bound(std::abs(z));
  if (std::abs(d) <= 64.0 * std::numeric_limits<double>::epsilon() * scale) {
    throw PoleError("h' has a pole at " + fmt_c(z), z);
  }
  return d;
}

}  // namespace

FunctionSpec FunctionSpec::poly_series(int p, std::vector<cplx> coeffs) {
  if (p < 1) throw ParameterError("p must be a positive integer");
  if (coeffs.empty()) throw ParameterError("coefficient list is empty");
  if (coeffs.front() != cplx(1.0, 0.0)) {
    throw ParameterError("normalization violated: a_p must equal 1");
  }
  for (const cplx& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ParameterError("coefficients must be finite");
    }
  }
  FunctionSpec s;
  s.rep_ = PolySeries{p, std::move(coeffs)};
  s.p_ = p;
  s.derive();
  return s;
}

FunctionSpec FunctionSpec::rational_deriv(int p, Polynomial numer,
                                          Polynomial denom) {
  if (p < 1) throw ParameterError("p must be a positive integer");
  if (denom.degree() < 0 || denom.coeff(0) == 0.0) {
    throw ParameterError("denominator must be nonzero at the origin");
  }
  for (int k = 0; k < p - 1; ++k) {
    if (numer.coeff(k) != 0.0) {
      throw ParameterError("numerator must be divisible by z^(p-1)");
    }
  }
  const cplx lead = numer.coeff(p - 1) / denom.coeff(0);
  if (numer.coeff(p - 1) == 0.0) {
    throw ParameterError("numerator / z^(p-1) must not vanish at the origin");
  }
  if (std::abs(lead - static_cast<double>(p)) > 1e-12 * p) {
    throw ParameterError("normalization violated: h must start with z^p");
  }
  FunctionSpec s;
  s.rep_ = RationalDeriv{p, std::move(numer), std::move(denom)};
  s.p_ = p;
  s.derive();
  return s;
}

void FunctionSpec::derive() {
  if (const auto* ps = series()) {
    std::vector<cplx> c(static_cast<std::size_t>(ps->p) + ps->coeffs.size(), 0.0);
    for (std::size_t i = 0; i < ps->coeffs.size(); ++i) {
      c[static_cast<std::size_t>(ps->p) + i] = ps->coeffs[i];
    }
    h_ = Polynomial(std::move(c));
    hp_ = h_.derivative();
    hpp_ = hp_.derivative();
    den_ = Polynomial(std::vector<cplx>{1.0});
    H_ = hp_.shifted_down(p_ - 1);
    return;
  }
  const auto& rd = *rational();
  hp_ = rd.numer;
  den_ = rd.denom;
  hpp_ = rd.numer.derivative() * rd.denom - rd.numer * rd.denom.derivative();
  H_ = rd.numer.shifted_down(p_ - 1);
  for (const cplx& r : rd.denom.roots()) {
    const double a = std::abs(r);
    if (std::abs(a - 1.0) < kCircleTol) {
      boundary_poles_.push_back(r / a);
    } else if (a < 1.0) {
      throw ParameterError("h' has a pole inside the unit disk at " + fmt_c(r));
    }
  }
}

HarmonicMapSpec::HarmonicMapSpec(FunctionSpec h, int m) : h_(std::move(h)), m_(m) {
  if (m < 2) throw ParameterError("m must be at least 2");
  if (const auto* ps = h_.series()) {
    std::vector<cplx> c(static_cast<std::size_t>(ps->p + m - 1) + ps->coeffs.size(), 0.0);
    for (std::size_t i = 0; i < ps->coeffs.size(); ++i) {
      const double n = ps->p + static_cast<double>(i);
      c[static_cast<std::size_t>(ps->p + m - 1) + i] = (n / (n + m - 1)) * ps->coeffs[i];
    }
    g_ = Polynomial(std::move(c));
  }
}

ClampedPoint clamp_to_disk(const FunctionSpec& spec, cplx z,
                           const QuadratureConfig& cfg) {
  require_in_disk(z);
  ClampedPoint out{z, false};
  if (!spec.has_boundary_poles()) return out;
  const double r = std::abs(z);
  if (r <= 1.0 - cfg.boundary_epsilon) return out;
  const double theta = std::arg(z);
  for (const cplx& pole : spec.boundary_poles()) {
    if (std::abs(wrap_angle(theta - std::arg(pole))) <= 10.0 * cfg.boundary_epsilon) {
      out.z = std::polar(1.0 - cfg.boundary_epsilon, theta);
      out.clamped = true;
      break;
    }
  }
  return out;
}

cplx eval_h_prime(const FunctionSpec& spec, cplx z) {
  require_in_disk(z);
  if (spec.is_series()) return spec.hp_numer()(z);
  return spec.hp_numer()(z) / checked_denom(spec, z);
}

cplx eval_h_second(const FunctionSpec& spec, cplx z) {
  require_in_disk(z);
  if (spec.is_series()) return spec.hpp_numer()(z);
  const cplx d = checked_denom(spec, z);
  return spec.hpp_numer()(z) / (d * d);
}

namespace {

// Rational h' along the ray s -> s z, s in [0, 1]; no domain checks in the
// inner loop.
cplx rational_hp(const FunctionSpec& spec, cplx z) {
  return spec.hp_numer()(z) / checked_denom(spec, z);
}

cplx ipow(cplx z, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

}  // namespace

cplx eval_h(const FunctionSpec& spec, cplx z, const QuadratureConfig& cfg) {
  if (spec.is_series()) {
    require_in_disk(z);
    return spec.h_poly()(z);
  }
  const ClampedPoint cp = clamp_to_disk(spec, z, cfg);
  if (cp.z == 0.0) return 0.0;
  const auto v = integrate<1>(
      [&](double s) { return std::array<cplx, 1>{rational_hp(spec, s * cp.z) * cp.z}; },
      0.0, 1.0, cfg);
  return v[0];
}

HarmonicMapSpec derive_g(const FunctionSpec& h, int m) {
  return HarmonicMapSpec(h, m);
}

MapValue eval_parts(const HarmonicMapSpec& map, cplx z,
                    const QuadratureConfig& cfg) {
  const FunctionSpec& spec = map.h();
  if (spec.is_series()) {
    require_in_disk(z);
    return {spec.h_poly()(z), (*map.g_series())(z), false};
  }
  const ClampedPoint cp = clamp_to_disk(spec, z, cfg);
  if (cp.z == 0.0) return {0.0, 0.0, cp.clamped};
  const int mm1 = map.m() - 1;
  const auto v = integrate<2>(
      [&](double s) {
        const cplx zeta = s * cp.z;
        const cplx hp = rational_hp(spec, zeta) * cp.z;
        return std::array<cplx, 2>{hp, ipow(zeta, mm1) * hp};
      },
      0.0, 1.0, cfg);
  return {v[0], v[1], cp.clamped};
}

cplx eval_g(const HarmonicMapSpec& map, cplx z, const QuadratureConfig& cfg) {
  if (map.g_series()) {
    require_in_disk(z);
    return (*map.g_series())(z);
  }
  const FunctionSpec& spec = map.h();
  const ClampedPoint cp = clamp_to_disk(spec, z, cfg);
  if (cp.z == 0.0) return 0.0;
  const int mm1 = map.m() - 1;
  const auto v = integrate<1>(
      [&](double s) {
        const cplx zeta = s * cp.z;
        return std::array<cplx, 1>{ipow(zeta, mm1) * rational_hp(spec, zeta) * cp.z};
      },
      0.0, 1.0, cfg);
  return v[0];
}

cplx eval_g_prime(const HarmonicMapSpec& map, cplx z) {
  return ipow(z, map.m() - 1) * eval_h_prime(map.h(), z);
}

cplx eval_f(const HarmonicMapSpec& map, cplx z, const QuadratureConfig& cfg) {
  return eval_parts(map, z, cfg).f();
}

std::vector<cplx> eval_f_many(const HarmonicMapSpec& map, std::span<const cplx> zs,
                              const QuadratureConfig& cfg,
                              std::vector<bool>* clamped) {
  const std::size_t n = zs.size();
  std::vector<cplx> out(n);
  if (map.g_series()) {
    for (const cplx& z : zs) require_in_disk(z);
    std::vector<cplx> g(n);
    map.h().h_poly().evaluate(zs, out);
    map.g_series()->evaluate(zs, g);
    for (std::size_t i = 0; i < n; ++i) out[i] += std::conj(g[i]);
    if (clamped) clamped->assign(n, false);
    return out;
  }
  std::vector<char> flags(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const MapValue v = eval_parts(map, zs[i], cfg);
    out[i] = v.f();
    flags[i] = v.clamped ? 1 : 0;
  });
  if (clamped) {
    clamped->resize(n);
    for (std::size_t i = 0; i < n; ++i) (*clamped)[i] = flags[i] != 0;
  }
  return out;
}

void eval_h_derivs_many(const FunctionSpec& spec, std::span<const cplx> zs,
                        std::span<cplx> hp, std::span<cplx> hpp) {
  if (spec.is_series()) {
    for (const cplx& z : zs) require_in_disk(z);
    spec.hp_numer().evaluate(zs, hp);
    spec.hpp_numer().evaluate(zs, hpp);
    return;
  }
  for (std::size_t i = 0; i < zs.size(); ++i) {
    hp[i] = eval_h_prime(spec, zs[i]);
    hpp[i] = eval_h_second(spec, zs[i]);
  }
}

}  // namespace hvl
