#include "skyroad/planner.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "skyroad/errors.hpp"

namespace skyroad {

double heuristic(const SkyroadGraph& graph, SegmentId i, SegmentId goal) {
  return distance(graph.segment(i).midpoint, graph.segment(goal).midpoint);
}

double transition_cost(const LiveGraph& live, SegmentId i, SegmentId j) {
  const auto edge = live.graph->find_edge(i, j);
  if (!edge || !live.edge_ok(*edge)) {
    throw EdgeNotLiveError("(" + std::to_string(i) + ", " + std::to_string(j) + ") is not in X");
  }
  return distance(live.graph->segment(i).midpoint, live.graph->segment(j).midpoint);
}

namespace {

struct OpenEntry {
  double f;
  double g;
  SegmentId id;
};

// Pops the smallest f; on ties the larger g, then the smaller id.
struct Later {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.id > b.id;
  }
};

}  // namespace

std::optional<Path> astar(const LiveGraph& live, const PathQuery& query) {
  const SkyroadGraph& graph = *live.graph;
  for (SegmentId id : {query.start, query.goal}) {
    if (!graph.contains(id)) throw IndexError("segment " + std::to_string(id) + " is not in V");
    if (!live.node_ok(id)) throw StartOrGoalAllocatedError("segment " + std::to_string(id) + " is allocated");
  }

  const std::size_t n = graph.node_count();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> g(n, inf);
  std::vector<SegmentId> parent(n, -1);
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, Later> open;

  g[query.start] = 0.0;
  open.push({heuristic(graph, query.start, query.goal), 0.0, query.start});
  bool found = false;
  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    if (top.g != g[top.id]) continue;  // stale entry
    if (top.id == query.goal) {
      found = true;
      break;
    }
    for (std::uint32_t e : graph.out_edges(top.id)) {
      if (!live.edge_ok(e)) continue;
      const SegmentId next = graph.edge(e).to;
      if (!live.node_ok(next)) continue;
      const double tentative = top.g + distance(graph.segment(top.id).midpoint, graph.segment(next).midpoint);
      // Strict improvement only; a closed node reopens if this happens.
      if (tentative < g[next]) {
        g[next] = tentative;
        parent[next] = top.id;
        open.push({tentative + heuristic(graph, next, query.goal), tentative, next});
      }
    }
  }
  if (!found) return std::nullopt;

  Path path;
  for (SegmentId v = query.goal; v != -1; v = parent[v]) {
    path.segment_ids.push_back(v);
    if (v == query.start) break;
  }
  std::reverse(path.segment_ids.begin(), path.segment_ids.end());
  path.total_cost = g[query.goal];
  path.hop_count = static_cast<int>(path.segment_ids.size());
  return path;
}

}  // namespace skyroad
