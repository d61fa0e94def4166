#include "hvl/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hvl/kernels.hpp"

namespace hvl {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  re_.reserve(c_.size());
  im_.reserve(c_.size());
  for (const cplx& c : c_) {
    re_.push_back(c.real());
    im_.push_back(c.imag());
  }
}

Polynomial Polynomial::monomial(int degree, cplx coeff) {
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coeff;
  return Polynomial(std::move(c));
}

int Polynomial::degree() const {
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
    if (c_[static_cast<std::size_t>(k)] != 0.0) return k;
  }
  return -1;
}

cplx Polynomial::coeff(int k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= c_.size()) return 0.0;
  return c_[static_cast<std::size_t>(k)];
}

cplx Polynomial::operator()(cplx z) const {
  const std::size_t n = c_.size();
  if (n == 0) return 0.0;
  const double zr = z.real();
  const double zi = z.imag();
  double ar = re_[n - 1];
  double ai = im_[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    const double nr = (ar * zr - ai * zi) + re_[k];
    const double ni = (ar * zi + ai * zr) + im_[k];
    ar = nr;
    ai = ni;
  }
  return {ar, ai};
}

void Polynomial::evaluate(std::span<const cplx> zs, std::span<cplx> out) const {
  const std::size_t n = zs.size();
  std::vector<double> zr(n), zi(n), orr(n), oi(n);
  for (std::size_t j = 0; j < n; ++j) {
    zr[j] = zs[j].real();
    zi[j] = zs[j].imag();
  }
  kernels::horner(re_, im_, zr, zi, orr, oi);
  for (std::size_t j = 0; j < n; ++j) out[j] = {orr[j], oi[j]};
}

double Polynomial::abs_bound(double abs_z) const {
  double acc = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * abs_z + std::abs(c_[k]);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial(std::vector<cplx>{0.0});
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) {
    d[k - 1] = static_cast<double>(k) * c_[k];
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted_up(int k) const {
  std::vector<cplx> c(static_cast<std::size_t>(k), 0.0);
  c.insert(c.end(), c_.begin(), c_.end());
  return Polynomial(std::move(c));
}

Polynomial Polynomial::shifted_down(int k) const {
  const auto kk = static_cast<std::size_t>(k);
  for (std::size_t i = 0; i < std::min(kk, c_.size()); ++i) {
    if (c_[i] != 0.0) {
      throw ParameterError("shifted_down: nonzero coefficient below z^" +
                           std::to_string(k));
    }
  }
  if (kk >= c_.size()) return Polynomial(std::vector<cplx>{0.0});
  return Polynomial(std::vector<cplx>(c_.begin() + static_cast<long>(kk), c_.end()));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return Polynomial(std::vector<cplx>{0.0});
  std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(c));
}

std::vector<cplx> Polynomial::roots() const {
  const int n = degree();
  if (n <= 0) return {};
  const cplx lead = c_[static_cast<std::size_t>(n)];
  std::vector<cplx> mon(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) mon[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k)] / lead;
  const Polynomial p(mon);
  const Polynomial dp = p.derivative();

  // Cauchy-style radius for the initial circle.
  double radius = 0.0;
  for (int k = 0; k < n; ++k) {
    radius = std::max(radius, std::pow(std::abs(mon[static_cast<std::size_t>(k)]), 1.0 / (n - k)));
  }
  radius = std::max(radius, 1e-3);

  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = std::polar(radius, ang);
  }

  for (int iter = 0; iter < 500; ++iter) {
    double max_step = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const cplx pv = p(z[ii]);
      if (pv == 0.0) continue;
      const cplx ratio = pv / dp(z[ii]);
      cplx sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) sum += 1.0 / (z[ii] - z[static_cast<std::size_t>(j)]);
      }
      const cplx step = ratio / (1.0 - ratio * sum);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) {
        z[ii] -= step;
        max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[ii])));
      }
    }
    if (max_step < 1e-15) break;
  }

  // Newton polish against the original coefficients.
  for (cplx& r : z) {
    for (int k = 0; k < 3; ++k) {
      const cplx d = dp(r);
      if (d == 0.0) break;
      const cplx step = p(r) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
    }
  }
  std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return z;
}

}  // namespace hvl
