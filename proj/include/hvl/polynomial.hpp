#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hvl/errors.hpp"

namespace hvl {

/// Dense polynomial with complex coefficients, stored in ascending order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);

  static Polynomial monomial(int degree, cplx coeff = 1.0);

  const std::vector<cplx>& coeffs() const { return c_; }
  bool empty() const { return c_.empty(); }
  /// Degree ignoring trailing zero coefficients; -1 for the zero polynomial.
  int degree() const;
  cplx coeff(int k) const;

  /// Horner's scheme; same operation order as kernels::horner.
  cplx operator()(cplx z) const;

  /// Batch evaluation through the SIMD kernel layer.
  void evaluate(std::span<const cplx> zs, std::span<cplx> out) const;

  /// Sum of |c_k| |z|^k, the scale for relative vanishing tests.
  double abs_bound(double abs_z) const;

  Polynomial derivative() const;
  /// Multiply by z^k.
  Polynomial shifted_up(int k) const;
  /// Divide by z^k; the lowest k coefficients must already be zero.
  Polynomial shifted_down(int k) const;

  /// Roots by Aberth-Ehrlich iteration followed by Newton polishing.
  std::vector<cplx> roots() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.c_ == b.c_;
  }

 private:
  std::vector<cplx> c_;
  std::vector<double> re_;
  std::vector<double> im_;
};

}  // namespace hvl
