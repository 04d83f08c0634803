#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace skyroad {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Counterclockwise quarter turn about +z.
constexpr Vec2 rotate_ccw90(Vec2 a) { return {-a.y, a.x}; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  constexpr bool operator==(const Vec3&) const = default;
};

inline double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

using Polyline = std::vector<Vec2>;

// Even-odd ray casting. Points exactly on an edge may land on either side.
bool point_in_polygon(Vec2 p, std::span<const Vec2> polygon);

// True when no two non-adjacent edges touch and no vertex is repeated.
bool is_simple_polygon(std::span<const Vec2> polygon);

double signed_area(std::span<const Vec2> polygon);

// Area centroid; falls back to the vertex mean for zero-area input.
Vec2 polygon_centroid(std::span<const Vec2> polygon);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

// Minimum distance between any two points of the two polylines.
double polyline_distance(std::span<const Vec2> a, std::span<const Vec2> b);

double polyline_length(std::span<const Vec2> line);

// Point at arc length `s` measured from the first vertex (clamped to the ends).
Vec2 point_at_arc_length(std::span<const Vec2> line, double s);

}  // namespace skyroad
