#include "skyroad/contour.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace skyroad {

namespace {

constexpr int kNone = -1;

struct Tracer {
  const GridView& grid;
  double level;
  std::span<const char> blocked;
  std::vector<std::array<int, 2>> links;
  std::vector<Vec2> points;
  std::vector<char> has_point;

  Tracer(const GridView& g, double lvl, std::span<const char> b)
      : grid(g), level(lvl), blocked(b) {
    const std::size_t edges = 2 * static_cast<std::size_t>(grid.n_x) * grid.n_y;
    links.assign(edges, {kNone, kNone});
    points.resize(edges);
    has_point.assign(edges, 0);
  }

  std::size_t node(int i, int j) const { return static_cast<std::size_t>(j) * grid.n_x + i; }
  bool above(int i, int j) const { return grid.values[node(i, j)] > level; }
  bool is_blocked(std::size_t n) const { return !blocked.empty() && blocked[n] != 0; }

  int horizontal(int i, int j) const { return static_cast<int>(2 * node(i, j)); }
  int vertical(int i, int j) const { return static_cast<int>(2 * node(i, j) + 1); }

  void place(int edge) {
    if (has_point[edge]) return;
    const std::size_t base = static_cast<std::size_t>(edge / 2);
    const int i = static_cast<int>(base % grid.n_x);
    const int j = static_cast<int>(base / grid.n_x);
    const bool is_vertical = edge % 2 == 1;
    const int i2 = is_vertical ? i : i + 1;
    const int j2 = is_vertical ? j + 1 : j;
    const std::size_t a = node(i, j);
    const std::size_t b = node(i2, j2);
    const double va = grid.values[a];
    const double vb = grid.values[b];
    double t = (level - va) / (vb - va);
    t = std::clamp(t, 0.0, 1.0);
    if (is_blocked(a)) t = std::max(t, 1.0 - kBlockedClearance);
    if (is_blocked(b)) t = std::min(t, kBlockedClearance);
    const Vec2 pa{i * grid.spacing_x, j * grid.spacing_y};
    const Vec2 pb{i2 * grid.spacing_x, j2 * grid.spacing_y};
    points[edge] = pa + (pb - pa) * t;
    has_point[edge] = 1;
  }

  void connect(int e0, int e1) {
    place(e0);
    place(e1);
    auto attach = [&](int from, int to) {
      auto& slot = links[from];
      if (slot[0] == kNone) {
        slot[0] = to;
      } else {
        slot[1] = to;
      }
    };
    attach(e0, e1);
    attach(e1, e0);
  }

  void march() {
    for (int j = 0; j + 1 < grid.n_y; ++j) {
      for (int i = 0; i + 1 < grid.n_x; ++i) {
        const bool a0 = above(i, j);
        const bool a1 = above(i + 1, j);
        const bool a2 = above(i + 1, j + 1);
        const bool a3 = above(i, j + 1);
        const int bottom = horizontal(i, j);
        const int right = vertical(i + 1, j);
        const int top = horizontal(i, j + 1);
        const int left = vertical(i, j);

        std::array<int, 4> crossed{};
        int count = 0;
        if (a0 != a1) crossed[count++] = bottom;
        if (a1 != a2) crossed[count++] = right;
        if (a3 != a2) crossed[count++] = top;
        if (a0 != a3) crossed[count++] = left;
        if (count == 2) {
          connect(crossed[0], crossed[1]);
        } else if (count == 4) {
          const double center = 0.25 * (grid.values[node(i, j)] + grid.values[node(i + 1, j)] +
                                        grid.values[node(i + 1, j + 1)] + grid.values[node(i, j + 1)]);
          // With the center on the diagonal pair's side, that pair joins and
          // the other two corners are cut off individually.
          const bool center_above = center > level;
          const bool join_02 = (a0 && center_above) || (!a0 && !center_above);
          if (join_02) {
            connect(bottom, right);
            connect(top, left);
          } else {
            connect(left, bottom);
            connect(right, top);
          }
        }
      }
    }
  }

  std::vector<ContourLine> assemble() {
    std::vector<ContourLine> lines;
    std::vector<char> used(links.size(), 0);
    auto walk = [&](int start, bool closed) {
      ContourLine line;
      line.closed = closed;
      int prev = kNone;
      int cur = start;
      while (cur != kNone && !used[cur]) {
        used[cur] = 1;
        line.points.push_back(points[cur]);
        const auto& l = links[cur];
        const int next = (l[0] != prev) ? l[0] : l[1];
        prev = cur;
        cur = next;
      }
      lines.push_back(std::move(line));
    };
    for (std::size_t e = 0; e < links.size(); ++e) {
      if (!has_point[e] || used[e]) continue;
      const bool endpoint = links[e][1] == kNone;
      if (endpoint) walk(static_cast<int>(e), false);
    }
    for (std::size_t e = 0; e < links.size(); ++e) {
      if (!has_point[e] || used[e]) continue;
      walk(static_cast<int>(e), true);
    }
    return lines;
  }
};

}  // namespace

std::vector<ContourLine> trace_contours(const GridView& grid, double level, std::span<const char> blocked) {
  Tracer tracer(grid, level, blocked);
  tracer.march();
  return tracer.assemble();
}

}  // namespace skyroad
