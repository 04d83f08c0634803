#include <doctest.h>

#include <cmath>

#include "skyroad/contour.hpp"

using namespace skyroad;

namespace {

std::vector<double> sample(int n, double h, auto fn) {
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(j) * n + i] = fn(i * h, j * h);
  return v;
}

}  // namespace

TEST_CASE("linear field gives one straight open line") {
  const auto v = sample(11, 10.0, [](double, double y) { return y / 100.0; });
  const GridView g{11, 11, 10.0, 10.0, v};
  const auto lines = trace_contours(g, 0.25, {});
  REQUIRE(lines.size() == 1);
  CHECK_FALSE(lines[0].closed);
  CHECK(lines[0].points.size() == 11);
  for (const Vec2& p : lines[0].points) CHECK(p.y == doctest::Approx(25.0));
  const double x0 = std::min(lines[0].points.front().x, lines[0].points.back().x);
  const double x1 = std::max(lines[0].points.front().x, lines[0].points.back().x);
  CHECK(x0 == 0.0);
  CHECK(x1 == 100.0);
}

TEST_CASE("peak gives a closed loop at the right radius") {
  const auto v = sample(41, 1.0, [](double x, double y) { return -std::hypot(x - 20, y - 20); });
  const GridView g{41, 41, 1.0, 1.0, v};
  const auto lines = trace_contours(g, -8.0, {});
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].closed);
  for (const Vec2& p : lines[0].points) CHECK(std::hypot(p.x - 20, p.y - 20) == doctest::Approx(8.0).epsilon(0.02));
}

TEST_CASE("saddle cells keep the two branches apart") {
  // Values 1 0 / 0 1 around a center of 0.5 + eps.
  const std::vector<double> v = {1, 0, 0, 1};
  const GridView g{2, 2, 1.0, 1.0, v};
  const auto lines = trace_contours(g, 0.4, {});
  CHECK(lines.size() == 2);
  for (const auto& l : lines) CHECK(l.points.size() == 2);
}

TEST_CASE("crossings next to blocked nodes stay in the free half-cell") {
  // Blocked node at the center holds 0.5; a level just above it would put
  // crossings right against the blocked node.
  std::vector<double> v = sample(5, 1.0, [](double, double y) { return y / 4.0; });
  std::vector<char> blocked(25, 0);
  blocked[2 * 5 + 2] = 1;
  v[2 * 5 + 2] = 0.5;
  v[2 * 5 + 1] = 0.51;
  const GridView g{5, 5, 1.0, 1.0, v};
  for (const auto& l : trace_contours(g, 0.505, blocked)) {
    for (const Vec2& p : l.points) CHECK(std::hypot(p.x - 2, p.y - 2) >= 0.55 - 1e-12);
  }
}
