#pragma once

// Numerical valence certificates: for a sense-preserving harmonic map the
// number of preimages of w inside |z| < r equals the winding number of
// f(|z| = r) about w. A damped Newton search for preimages serves as an
// independent oracle.

#include <optional>
#include <string>
#include <vector>

#include "hvl/geometry.hpp"

namespace hvl {

struct WindingResult {
  cplx w;
  int winding = 0;
  double min_curve_distance = 0.0;
};

/// Sums principal angle increments of (point - w) around the closed trace.
/// Edges turning by pi/2 or more are refined up to 4x using the trace's
/// source map; ResolutionError if that is not enough. IndeterminateProbe when
/// the polyline passes within probe_clearance of w.
WindingResult winding_number(const CurveTrace& trace, cplx w, double probe_clearance);

struct ValenceConfig {
  int trace_samples = 4096;
  /// Adaptive trace: largest chord relative to the image diameter.
  double max_chord_rel = 2.5e-4;
  std::size_t max_trace_points = std::size_t{1} << 18;
  /// probe_clearance = clearance_rel * image diameter.
  double clearance_rel = 1e-4;
  double max_indeterminate_fraction = 0.2;
  QuadratureConfig quadrature{};
};

struct ValenceReport {
  double radius = 0.0;
  int grid_w = 0;
  int grid_h = 0;
  double box_min_re = 0.0, box_min_im = 0.0, box_max_re = 0.0, box_max_im = 0.0;
  std::vector<WindingResult> results;  // valid probes only, row-major order
  std::size_t indeterminate = 0;
  int max_valence = 0;
  std::vector<cplx> attained_at;
  int p = 0;
  bool consistent_with_p = false;
};

/// Winding numbers of f(|z| = r) over a grid_w x grid_h grid of probe cell
/// centres spanning the image bounding box padded by 10%. Raises Error
/// ("scan quality") when more than 20% of probes are indeterminate.
ValenceReport valence_scan(const HarmonicMapSpec& map, double r, int grid_w, int grid_h,
                           const ValenceConfig& cfg = {});

/// Same probe rule as valence_scan applied to a prepared trace.
std::optional<int> probe_winding(const CurveTrace& trace, cplx w, double probe_clearance);

struct NewtonConfig {
  double newton_tol = 1e-10;
  double dedupe_radius = 1e-6;
  int max_iterations = 100;
  int max_halvings = 20;
  double start_radius = 0.999;
  /// Offset into the Halton sequence; fixes the start set.
  unsigned seed = 0;
  QuadratureConfig quadrature{};
};

struct Preimage {
  cplx z;
  double residual;
  /// |h'|^2 - |g'|^2, the Jacobian determinant of f at z.
  double jacobian;
};

struct PreimageSet {
  cplx w;
  std::vector<Preimage> roots;
  int starts = 0;
  int converged = 0;
};

/// Damped Newton iteration on f(z) = w from `starts` quasi-random points in
/// |z| < start_radius. Converged roots are deduplicated within dedupe_radius.
PreimageSet newton_preimages(const HarmonicMapSpec& map, cplx w, int starts,
                             const NewtonConfig& cfg = {});

enum class CrossCheck { agree, disagree, indeterminate_multiplicity };

std::string to_string(CrossCheck c);

struct CrossCheckResult {
  CrossCheck status = CrossCheck::disagree;
  int winding = 0;
  int preimages_inside = 0;
  PreimageSet preimages;
};

/// Compares the winding of f(|z| = r) about w with the number of distinct
/// Newton preimages in |z| < r. Preimages with Jacobian <= 1e-12 make the
/// comparison indeterminate.
CrossCheckResult cross_check(const HarmonicMapSpec& map, cplx w, double r,
                             const ValenceConfig& vcfg = {},
                             const NewtonConfig& ncfg = {}, int starts = 200);

/// As above with a prepared trace of radius trace.radius (reused across probes).
CrossCheckResult cross_check(const HarmonicMapSpec& map, const CurveTrace& trace,
                             cplx w, const ValenceConfig& vcfg = {},
                             const NewtonConfig& ncfg = {}, int starts = 200);

/// The adaptive trace valence_scan and cross_check use.
CurveTrace valence_trace(const HarmonicMapSpec& map, double r, const ValenceConfig& cfg = {});

}  // namespace hvl
