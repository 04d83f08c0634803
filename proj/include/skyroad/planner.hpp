#pragma once

#include <optional>
#include <span>
#include <vector>

#include "skyroad/skyroads.hpp"

namespace skyroad {

struct PathQuery {
  SegmentId start = 0;
  SegmentId goal = 0;
  int issued_at = 0;
};

struct Path {
  std::vector<SegmentId> segment_ids;
  double total_cost = 0.0;  // meters
  int hop_count = 0;        // number of segments on the path
};

// G(W, X): the global graph seen through accessibility masks. An empty
// mask means "everything live".
struct LiveGraph {
  const SkyroadGraph* graph = nullptr;
  std::span<const char> node_live;  // indexed by segment id
  std::span<const char> edge_live;  // indexed by edge index

  bool node_ok(SegmentId id) const { return node_live.empty() || node_live[static_cast<std::size_t>(id)] != 0; }
  bool edge_ok(std::size_t edge) const {
    if (!edge_live.empty()) return edge_live[edge] != 0;
    const Edge& e = graph->edge(edge);
    return node_ok(e.from) && node_ok(e.to);
  }
};

// 3D Euclidean distance between segment midpoints.
double heuristic(const SkyroadGraph& graph, SegmentId i, SegmentId goal);

// Same metric, but only for live edges. Throws EdgeNotLiveError.
double transition_cost(const LiveGraph& live, SegmentId i, SegmentId j);

// Minimum-cost path from query.start to query.goal over live nodes and
// edges. Ties on f prefer larger g, then the smaller segment id. Returns
// nullopt when the goal is unreachable. Throws StartOrGoalAllocatedError
// when either endpoint is not live, IndexError for unknown ids.
std::optional<Path> astar(const LiveGraph& live, const PathQuery& query);

}  // namespace skyroad
