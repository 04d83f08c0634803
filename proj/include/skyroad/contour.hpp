#pragma once

#include <span>
#include <vector>

#include "skyroad/geometry.hpp"

namespace skyroad {

struct ContourLine {
  Polyline points;
  bool closed = false;
};

// Node-valued scalar grid, row-major by y, nodes at (i * spacing_x, j * spacing_y).
struct GridView {
  int n_x = 0;
  int n_y = 0;
  double spacing_x = 1.0;
  double spacing_y = 1.0;
  std::span<const double> values;
};

// Fraction of an edge a crossing may sit from a blocked node's neighbour.
// Keeps every contour vertex strictly inside the keep-in node's half-cell.
inline constexpr double kBlockedClearance = 0.45;

// Marching-squares iso-lines at `level` with linear interpolation on cell
// edges and center-value disambiguation of saddles. `blocked` (may be empty)
// marks nodes whose half-cell a crossing must not enter. Open lines run
// between boundary crossings; closed lines repeat no vertex.
std::vector<ContourLine> trace_contours(const GridView& grid, double level, std::span<const char> blocked);

}  // namespace skyroad
