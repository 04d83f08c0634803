#include "skyroad/geometry.hpp"

#include <algorithm>
#include <limits>

namespace skyroad {

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  const int o1 = orientation(a0, a1, b0);
  const int o2 = orientation(a0, a1, b1);
  const int o3 = orientation(b0, b1, a0);
  const int o4 = orientation(b0, b1, a1);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a0, a1, b0)) return true;
  if (o2 == 0 && on_segment(a0, a1, b1)) return true;
  if (o3 == 0 && on_segment(b0, b1, a0)) return true;
  if (o4 == 0 && on_segment(b0, b1, a1)) return true;
  return false;
}

}  // namespace

bool point_in_polygon(Vec2 p, std::span<const Vec2> polygon) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool is_simple_polygon(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (polygon[i] == polygon[j]) return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a0 = polygon[i];
    const Vec2 a1 = polygon[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(a0, a1, polygon[j], polygon[(j + 1) % n])) return false;
    }
  }
  // Collinear polygons have no interior.
  return std::abs(signed_area(polygon)) > 0.0;
}

double signed_area(std::span<const Vec2> polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(polygon[i], polygon[(i + 1) % n]);
  }
  return 0.5 * twice;
}

Vec2 polygon_centroid(std::span<const Vec2> polygon) {
  const double area = signed_area(polygon);
  const std::size_t n = polygon.size();
  if (n == 0) return {};
  if (std::abs(area) < std::numeric_limits<double>::epsilon()) {
    Vec2 mean;
    for (const Vec2& p : polygon) mean = mean + p;
    return mean * (1.0 / static_cast<double>(n));
  }
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % n];
    const double w = cross(a, b);
    cx += (a.x + b.x) * w;
    cy += (a.y + b.y) * w;
  }
  return {cx / (6.0 * area), cy / (6.0 * area)};
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  if (segments_intersect(a0, a1, b0, b1)) return 0.0;
  return std::min({point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1),
                   point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)});
}

double polyline_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
  double best = std::numeric_limits<double>::infinity();
  if (a.empty() || b.empty()) return best;
  if (a.size() == 1 || b.size() == 1) {
    const auto& single = a.size() == 1 ? a : b;
    const auto& other = a.size() == 1 ? b : a;
    if (other.size() == 1) return distance(single[0], other[0]);
    for (std::size_t j = 0; j + 1 < other.size(); ++j) {
      best = std::min(best, point_segment_distance(single[0], other[j], other[j + 1]));
    }
    return best;
  }
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const double ax_lo = std::min(a[i].x, a[i + 1].x);
    const double ax_hi = std::max(a[i].x, a[i + 1].x);
    const double ay_lo = std::min(a[i].y, a[i + 1].y);
    const double ay_hi = std::max(a[i].y, a[i + 1].y);
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      // Bounding-box gap is a lower bound on the segment distance.
      const double gx = std::max({0.0, std::min(b[j].x, b[j + 1].x) - ax_hi,
                                  ax_lo - std::max(b[j].x, b[j + 1].x)});
      const double gy = std::max({0.0, std::min(b[j].y, b[j + 1].y) - ay_hi,
                                  ay_lo - std::max(b[j].y, b[j + 1].y)});
      if (gx * gx + gy * gy >= best * best) continue;
      best = std::min(best, segment_segment_distance(a[i], a[i + 1], b[j], b[j + 1]));
    }
  }
  return best;
}

double polyline_length(std::span<const Vec2> line) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) total += distance(line[i], line[i + 1]);
  return total;
}

Vec2 point_at_arc_length(std::span<const Vec2> line, double s) {
  if (line.empty()) return {};
  if (s <= 0.0) return line.front();
  double walked = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const double len = distance(line[i], line[i + 1]);
    if (walked + len >= s && len > 0.0) {
      const double t = (s - walked) / len;
      return line[i] + (line[i + 1] - line[i]) * t;
    }
    walked += len;
  }
  return line.back();
}

}  // namespace skyroad
