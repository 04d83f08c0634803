#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <random>
#include <vector>

#include "skyroad/airspace.hpp"
#include "skyroad/skyroads.hpp"

namespace testsupport {

using skyroad::Vec2;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline std::vector<Vec2> rect(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

inline skyroad::LandscapeSpec make_spec(double extent, int nodes, int floors, double dz = 12.5) {
  skyroad::LandscapeSpec s;
  s.x_extent = s.y_extent = extent;
  s.n_x = s.n_y = nodes;
  s.n_z = floors;
  s.delta_z = dz;
  return s;
}

inline void add_obstacle(skyroad::LandscapeSpec& s, std::string id, std::vector<Vec2> footprint, double height) {
  s.obstacles.push_back({std::move(id), std::move(footprint), height});
}

// Even-odd crossing test written independently of the library.
inline bool inside(Vec2 p, const std::vector<Vec2>& poly) {
  int crossings = 0;
  for (std::size_t a = 0, b = poly.size() - 1; a < poly.size(); b = a++) {
    const Vec2 u = poly[a];
    const Vec2 v = poly[b];
    if ((u.y > p.y) == (v.y > p.y)) continue;
    const double x = u.x + (p.y - u.y) * (v.x - u.x) / (v.y - u.y);
    if (p.x < x) ++crossings;
  }
  return crossings % 2 == 1;
}

// Kosaraju component count on an explicit edge list.
inline std::size_t kosaraju_components(std::size_t n, const std::vector<skyroad::Edge>& edges) {
  std::vector<std::vector<int>> fwd(n), rev(n);
  for (const auto& e : edges) {
    fwd[e.from].push_back(e.to);
    rev[e.to].push_back(e.from);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> order;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(s), 0}};
    seen[s] = 1;
    while (!stack.empty()) {
      auto& [v, k] = stack.back();
      if (k < fwd[v].size()) {
        const int w = fwd[v][k++];
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(n, -1);
  std::size_t count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    std::vector<int> stack{*it};
    comp[*it] = static_cast<int>(count);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : rev[v]) {
        if (comp[w] < 0) {
          comp[w] = static_cast<int>(count);
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return count;
}

// Plain Dijkstra over an adjacency list with per-node / per-edge masks.
inline double dijkstra_cost(const skyroad::SkyroadGraph& g, const std::vector<char>& node_ok, int s, int t) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.node_count(), inf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0.0;
  pq.push({0.0, s});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (const auto& e : g.edges()) {
      if (e.from != v || !node_ok[e.to]) continue;
      const auto& a = g.segment(e.from).midpoint;
      const auto& b = g.segment(e.to).midpoint;
      const double nd = d + std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        pq.push({nd, e.to});
      }
    }
  }
  return dist[t];
}

inline bool bfs_reachable(const skyroad::SkyroadGraph& g, const std::vector<char>& node_ok, int s, int t) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<int> queue{s};
  seen[s] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int v = queue[q];
    if (v == t) return true;
    for (const auto& e : g.edges()) {
      if (e.from == v && node_ok[e.to] && !seen[e.to]) {
        seen[e.to] = 1;
        queue.push_back(e.to);
      }
    }
  }
  return false;
}

// Random graph with midpoints on a few floors; edges sampled freely.
inline skyroad::SkyroadGraph random_graph(std::mt19937_64& rng, int nodes, int edges) {
  std::vector<skyroad::Segment> segs;
  for (int i = 0; i < nodes; ++i) {
    skyroad::Segment s;
    s.id = i;
    s.floor_index = uniform_int(rng, 1, 3);
    s.skyroad_index = i;
    s.midpoint = {uniform(rng, 0, 200), uniform(rng, 0, 200), 12.5 * s.floor_index};
    s.length = 10.0;
    segs.push_back(s);
  }
  std::vector<skyroad::Edge> es;
  for (int k = 0; k < edges; ++k) {
    const int a = uniform_int(rng, 0, nodes - 1);
    const int b = uniform_int(rng, 0, nodes - 1);
    if (a != b) es.push_back({a, b});
  }
  return skyroad::SkyroadGraph(std::move(segs), std::move(es));
}

}  // namespace testsupport
