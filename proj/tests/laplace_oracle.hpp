#pragma once

#include <Eigen/Dense>
#include <vector>

#include "skyroad/airspace.hpp"
#include "support.hpp"

namespace testsupport {

inline Vec2 shoelace_centroid(const std::vector<Vec2>& poly) {
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const double w = poly[j].x * poly[i].y - poly[i].x * poly[j].y;
    a += w;
    cx += (poly[j].x + poly[i].x) * w;
    cy += (poly[j].y + poly[i].y) * w;
  }
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

// Direct LU solve of the 5-point system on a square grid. Assumes every
// obstacle on the floor forms its own keep-out zone.
inline std::vector<double> dense_laplace(const skyroad::LandscapeSpec& s, int floor) {
  const int n = s.n_x;
  const double L = s.x_extent;
  const double lo = s.psi_min, range = s.psi_max - s.psi_min;
  const bool odd = floor % 2 == 1;
  auto coord = [&](int i) { return i == n - 1 ? L : i * (L / (n - 1)); };
  auto linear = [&](Vec2 p) { return lo + (odd ? p.y / L : (L - p.x) / L) * range; };

  std::vector<double> value(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<char> fixed(value.size(), 0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t c = static_cast<std::size_t>(j) * n + i;
      const Vec2 p{coord(i), coord(j)};
      if (i == 0 || j == 0 || i == n - 1 || j == n - 1) {
        value[c] = linear(p);
        fixed[c] = 1;
        continue;
      }
      for (const auto& o : s.obstacles) {
        if (o.height > floor * s.delta_z && inside(p, o.footprint)) {
          value[c] = linear(shoelace_centroid(o.footprint));
          fixed[c] = 1;
        }
      }
    }
  }
  std::vector<int> unknown(value.size(), -1);
  int m = 0;
  for (std::size_t c = 0; c < value.size(); ++c) {
    if (!fixed[c]) unknown[c] = m++;
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  for (std::size_t c = 0; c < value.size(); ++c) {
    if (fixed[c]) continue;
    const int r = unknown[c];
    A(r, r) = 4.0;
    for (std::size_t nb : {c - 1, c + 1, c - n, c + n}) {
      if (fixed[nb]) b(r) += value[nb];
      else A(r, unknown[nb]) = -1.0;
    }
  }
  const Eigen::VectorXd x = A.partialPivLu().solve(b);
  for (std::size_t c = 0; c < value.size(); ++c) {
    if (!fixed[c]) value[c] = x(unknown[c]);
  }
  return value;
}

}  // namespace testsupport
