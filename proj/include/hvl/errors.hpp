#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hvl {

using cplx = std::complex<double>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid construction parameters (m < 2, broken normalization, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Point outside the closed unit disk, or radius out of range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A denominator (or h') vanishes at `location`.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, cplx location)
      : Error(what), location_(location) {}
  cplx location() const { return location_; }

 private:
  cplx location_;
};

/// Adaptive quadrature hit its depth or interval limit.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double worst_error, double a,
                  double b)
      : Error(what), worst_error_(worst_error), a_(a), b_(b) {}
  double worst_error() const { return worst_error_; }
  double interval_begin() const { return a_; }
  double interval_end() const { return b_; }

 private:
  double worst_error_;
  double a_;
  double b_;
};

/// A hypothesis of the univalence criterion fails (H vanishes or blows up on
/// the unit circle, ...).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Phase unwrapping or curve refinement exceeded its point budget.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Probe lies too close to a traced curve for a discrete winding number.
class IndeterminateProbe : public Error {
 public:
  using Error::Error;
};

/// Two independent computations that must agree did not.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace hvl
