#pragma once

// Root-count test for the boundary phase function
//   F(t) = (2p + m - 1) t + 2 arg H(e^{it}),   H(z) = h'(z) / z^(p-1),
// on [-pi, pi), using a continuous branch of arg H.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hvl/fncore.hpp"

namespace hvl {

struct CriterionConfig {
  /// Uniform samples of t over [-pi, pi); a power of two >= 1024.
  int grid_size = 8192;
  double bisect_tol = 1e-12;
  double tangency_threshold = 1e-7;
  double h_nonvanish_tol = 1e-9;
  QuadratureConfig quadrature{};

  void validate() const;
};

struct PhaseSample {
  double t;
  double phase;  // continuous branch of arg H(e^{it})
  cplx H;
};

/// Continuous phase of H along the unit circle, from t = -pi to t = pi
/// inclusive. Entries are strictly increasing in t; adjacent phases differ by
/// less than pi / 2.
class PhaseTable {
 public:
  explicit PhaseTable(std::vector<PhaseSample> samples) : s_(std::move(samples)) {}
  const std::vector<PhaseSample>& samples() const { return s_; }
  /// Index i with samples[i].t <= t < samples[i+1].t (clamped to the ends).
  std::size_t locate(double t) const;
  /// Winding number of t -> H(e^{it}) about 0.
  int winding() const;
  double min_modulus() const;

 private:
  std::vector<PhaseSample> s_;
};

/// Throws HypothesisError when H vanishes (|H| <= h_nonvanish_tol) or has a
/// pole on the unit circle, ResolutionError past 2^20 samples.
PhaseTable unwrap_arg_H(const FunctionSpec& spec, int grid_size,
                        double h_nonvanish_tol = 1e-9);

/// F(t) with the phase taken from the nearest table entry at or below t and
/// corrected exactly by arg(H(t) conj(H_entry)).
double eval_F(const FunctionSpec& spec, int m, double t, const PhaseTable& table);

/// m + 1 + 2 Re(z h''(z) / h'(z)) at z = e^{it}. PoleError when h'(z) = 0.
double eval_F_prime(const FunctionSpec& spec, int m, double t);

/// Largest |k| in the index set K = {0, +-1, ..., +-floor((2p+m+1)/2)}.
int level_bound(int p, int m);

struct RootRecord {
  int k = 0;
  double t = 0.0;
  cplx f_value_at_root;  // phi(t) = f(e^{it}), the cusp image
  bool suspected_tangency = false;
};

/// Crossings of F(t) = 2 k pi, t in [-pi, pi), for the given levels.
std::vector<RootRecord> find_level_roots(const FunctionSpec& spec, int m,
                                         const PhaseTable& table,
                                         const std::vector<int>& levels,
                                         const CriterionConfig& cfg);

/// All k in K; records sorted by t.
std::vector<RootRecord> find_criterion_roots(const FunctionSpec& spec, int m,
                                             const CriterionConfig& cfg = {});

/// min over circles r in {0.9, 0.99, 0.999, 1 - 1e-6} and grid_size angles of
/// Re(1 + z h''/h') + (m - 1)/2. Zeros of H in the open disk make the
/// quantity unbounded below there; they raise PoleError with the location.
double check_remark_condition(const FunctionSpec& spec, int m,
                              const CriterionConfig& cfg = {});

struct CriterionReport {
  int p = 0;
  int m = 0;
  std::vector<RootRecord> roots;
  std::map<int, int> per_k_counts;
  int total_roots = 0;
  bool h_nonvanishing = false;
  std::optional<double> h_min_modulus;
  std::optional<int> h_winding;
  std::optional<double> remark_margin;
  bool hypotheses_hold = false;
  bool theorem_applies = false;
  bool any_tangency = false;
  std::vector<std::string> notes;
};

/// Never throws for mathematical failures; they are recorded in the report.
CriterionReport check_theorem1(const FunctionSpec& spec, int m,
                               const CriterionConfig& cfg = {});

}  // namespace hvl
