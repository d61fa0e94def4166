#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hvl/criterion.hpp"
#include "hvl/fncore.hpp"

namespace hvl {

struct RenderOptions {
  std::vector<double> circle_radii{0.2, 0.4, 0.6, 0.8, 0.95, 0.999};
  int ray_count = 24;
  int samples_per_curve = 2048;
  int width = 800;
  int height = 800;
  double boundary_stroke = 1.6;  // px
  double grid_stroke = 0.6;      // px
  double cusp_radius = 3.5;      // px
  std::string boundary_color = "#1f3b73";
  std::string circle_color = "#6c8ebf";
  std::string ray_color = "#b0b8c8";
  std::string cusp_color = "#c0392b";
  std::string background = "#ffffff";
  bool show_cusps = true;
  double max_radius = 1.0 - 1e-6;
  QuadratureConfig quadrature{};

  void validate() const;
};

/// SVG 1.1 document with the images of the circle |z| = max_radius, of the
/// circles |z| = r for r in circle_radii and of ray_count radial segments.
/// Cusp markers are drawn at the criterion roots when the report says the
/// criterion applies. Curves that fail to evaluate are replaced by an XML
/// comment. Coordinates use fixed six-decimal formatting; output is a pure
/// function of the inputs.
std::string render_scene(const HarmonicMapSpec& map, const CriterionReport* criterion,
                         const RenderOptions& opts = {});

}  // namespace hvl
