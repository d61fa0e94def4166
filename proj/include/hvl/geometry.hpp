#pragma once

// Boundary geometry of f = h + conj(g): traces of circle images, closed-form
// phi'(t) and phi''(t) for phi(t) = f(e^{it}), concavity, cusps and
// straight-side checks.

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "hvl/criterion.hpp"
#include "hvl/fncore.hpp"

namespace hvl {

/// Samples of f(r e^{it}). phi_prime / phi_second are filled only for r == 1
/// and maps without boundary poles.
struct CurveTrace {
  double radius = 1.0;
  std::vector<double> t;
  std::vector<cplx> points;
  std::vector<cplx> phi_prime;
  std::vector<cplx> phi_second;
  std::vector<bool> clamped;
  /// Source map, kept so consumers can refine the trace locally.
  std::shared_ptr<const HarmonicMapSpec> map;
  QuadratureConfig quadrature{};

  std::size_t size() const { return points.size(); }
  /// Diagonal of the bounding box of the sampled points.
  double diameter() const;
};

/// n uniform samples t_j = -pi + 2 pi j / n. Requires 0 < r <= 1, n >= 256.
CurveTrace trace_circle(const HarmonicMapSpec& map, double r, int n,
                        const QuadratureConfig& cfg = {});

/// Starts from n uniform samples and bisects every interval whose chord
/// exceeds max_chord_rel * diameter, up to max_points samples in total.
CurveTrace trace_circle_adaptive(const HarmonicMapSpec& map, double r, int n,
                                 double max_chord_rel, std::size_t max_points,
                                 const QuadratureConfig& cfg = {});

/// CSV with header "t,re_f,im_f,clamped", 17 significant digits.
void write_trace_csv(const CurveTrace& trace, std::ostream& os);

/// phi'(t) = i z (h'(z) - conj(z)^(m+1) conj(h'(z))), z = e^{it}.
cplx eval_phi_prime(const HarmonicMapSpec& map, double t);

/// phi''(t) = -(z h' + z^2 h'' + m conj(z)^m conj(h') + conj(z)^(m+1) conj(h'')).
cplx eval_phi_second(const HarmonicMapSpec& map, double t);

struct ConcavityReport {
  /// max over samples of Im(phi'' conj(phi')).
  double max_im = 0.0;
  /// max |Im(phi'' conj(phi')) - (m-1)|h'|^2 Re(conj(z)^(m+1)(conj(h')/|h'|)^2 - 1)|.
  double max_identity_abs = 0.0;
  /// Same discrepancy, per sample divided by max(1, |phi'| |phi''|).
  double max_identity_rel = 0.0;
  /// max |phi'| * max |phi''|.
  double scale = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  bool pass = false;
};

/// Checks Im(phi'' conj(phi')) <= 1e-9 * scale at n boundary samples and the
/// factored identity at each. Pole or h' = 0 samples are skipped and counted.
ConcavityReport concavity_check(const HarmonicMapSpec& map, int n);

struct Cusp {
  double t;
  cplx image;
  int k;
};

struct CuspSet {
  std::vector<Cusp> cusps;
  std::vector<std::string> warnings;
  std::size_t count() const { return cusps.size(); }
};

struct CuspConfig {
  int grid_size = 8192;
  /// cusp_tol = rel_tol * max |phi'| over the grid.
  double rel_tol = 1e-6;
  QuadratureConfig quadrature{};
};

/// One cusp per criterion root, each verified by |phi'(t_j)| < cusp_tol.
/// Requires report.theorem_applies unless `override_gate` is set; throws
/// InconsistencyError when a root is not a zero of phi'.
CuspSet detect_cusps(const HarmonicMapSpec& map, const CriterionReport& report,
                     const CuspConfig& cfg = {}, bool override_gate = false);

/// Zeros of phi' located directly: grid minima of |phi'| refined by
/// golden-section search, kept when below rel_tol * max |phi'|. Independent of
/// the criterion's phase function.
std::vector<double> find_phi_prime_zeros(const HarmonicMapSpec& map,
                                         const CuspConfig& cfg = {});

/// Preimages of the vertices of the straight-sided presets: the midpoints
/// between consecutive boundary poles.
std::vector<double> straight_side_breakpoints(const HarmonicMapSpec& map);

/// For each arc between consecutive breakpoints, the largest distance of
/// interior samples from the chord through the arc's end samples, divided by
/// the trace diameter. ResolutionError when an arc has fewer than 3 samples.
double segment_collinearity(const CurveTrace& trace,
                            const std::vector<double>& breakpoints);

}  // namespace hvl
