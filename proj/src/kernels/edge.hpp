#pragma once

#include <algorithm>

namespace hvl::kernels::detail {

struct EdgeTally {
  int crossing;
  bool blocked;
  double dist2;
};

// Per-edge arithmetic shared with the vector tail loop; coordinates are
// relative to the probe.
inline EdgeTally edge(double ax, double ay, double bx, double by) {
  EdgeTally e{};
  const double dot = ax * bx + ay * by;
  e.blocked = !(dot > 0.0);
  const double is_left = ax * by - ay * bx;
  if (ay <= 0.0 && by > 0.0 && is_left > 0.0) e.crossing = 1;
  if (ay > 0.0 && by <= 0.0 && is_left < 0.0) e.crossing = -1;
  const double ex = bx - ax;
  const double ey = by - ay;
  const double len2 = ex * ex + ey * ey;
  const double num = -(ax * ex + ay * ey);
  double t = len2 > 0.0 ? num / len2 : 0.0;
  t = std::max(t, 0.0);
  t = std::min(t, 1.0);
  const double px = ax + t * ex;
  const double py = ay + t * ey;
  e.dist2 = px * px + py * py;
  return e;
}


}  // namespace hvl::kernels::detail
