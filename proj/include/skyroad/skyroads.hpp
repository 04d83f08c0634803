#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skyroad/airspace.hpp"
#include "skyroad/streamfield.hpp"

namespace skyroad {

using SegmentId = std::int32_t;

enum class SkyroadKind { uniform, wrapper, wall };

// A directed corridor along one streamline of a floor.
struct Skyroad {
  int floor_index = 0;
  double elevation = 0.0;
  double iso_value = 0.0;
  Polyline polyline;
  int direction = 1;  // travel sign along n1
  int index_on_floor = 0;
  SkyroadKind kind = SkyroadKind::uniform;

  bool mandatory() const { return kind != SkyroadKind::uniform; }
};

struct StreamlineOptions {
  int levels = 10;           // n_s
  double delta_min = 0.0;    // meters
  // Also emit the psi_min / psi_max boundary streamlines and keep the line
  // count even, so the boundary corridors close into a directed loop.
  bool include_walls = false;
};

struct ExtractionReport {
  int candidates = 0;
  int dropped_for_bandwidth = 0;
  int dropped_inside_wrap = 0;
  int dropped_closed_loops = 0;
  int dropped_for_parity = 0;
  int bandwidth_violations = 0;  // mandatory pairs closer than delta_min
  std::vector<std::string> warnings;
};

// Contours the stream field at uniform levels plus the wrapping levels of
// each keep-out cluster, thins the set to the minimum bandwidth and returns
// the survivors sorted by stream value (directions not yet assigned).
// Throws ValidationError, UnconvergedFieldError, NoStreamlinesError.
std::vector<Skyroad> extract_streamlines(const StreamField& field, const FloorSlice& floor,
                                         const StreamlineOptions& options, ExtractionReport* report = nullptr);

// Alternating travel signs (+1 for even index) and polylines reordered to
// follow them.
std::vector<Skyroad> assign_directions(std::vector<Skyroad> skyroads, const FloorSlice& floor);

struct Segment {
  SegmentId id = 0;
  int floor_index = 0;
  int skyroad_index = 0;
  int arc_index = 0;
  Vec3 midpoint;
  double length = 0.0;
  Vec2 start;
  Vec2 end;
};

// Cuts each polyline into arcs of `seg_length`; a tail shorter than half
// that merges into the previous arc. Ids start at `first_id`.
std::vector<Segment> segment_skyroads(std::span<const Skyroad> skyroads, double seg_length,
                                      SegmentId first_id = 0, std::vector<std::string>* warnings = nullptr);

struct Edge {
  SegmentId from = 0;
  SegmentId to = 0;
  auto operator<=>(const Edge&) const = default;
};

// G_glob(V, E). Segment ids equal their index; edges are sorted and unique.
class SkyroadGraph {
 public:
  SkyroadGraph() = default;
  // Throws ValidationError on non-contiguous ids, dangling or self edges.
  SkyroadGraph(std::vector<Segment> segments, std::vector<Edge> edges);

  std::size_t node_count() const { return segments_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Segment& segment(SegmentId id) const { return segments_.at(static_cast<std::size_t>(id)); }
  std::span<const Segment> segments() const { return segments_; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_[index]; }

  // Edge indices leaving / entering a node.
  std::span<const std::uint32_t> out_edges(SegmentId id) const;
  std::span<const std::uint32_t> in_edges(SegmentId id) const;
  std::optional<std::size_t> find_edge(SegmentId from, SegmentId to) const;
  bool has_edge(SegmentId from, SegmentId to) const { return find_edge(from, to).has_value(); }
  bool contains(SegmentId id) const { return id >= 0 && static_cast<std::size_t>(id) < segments_.size(); }

 private:
  std::vector<Segment> segments_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> out_offsets_, out_index_;
  std::vector<std::uint32_t> in_offsets_, in_index_;
};

// Successor edges along each skyroad plus bidirectional vertical edges
// between adjacent floors whose horizontal midpoint distance is <= r_v.
// r_v <= 0 disables vertical edges.
SkyroadGraph build_edges(std::vector<Segment> segments, double r_v);

// Checks the structural rules of E; returns human-readable violations.
std::vector<std::string> rule_violations(const SkyroadGraph& graph, double r_v);

struct ReachabilityReport {
  bool strongly_connected = true;
  std::size_t node_count = 0;
  std::size_t component_count = 0;
  std::size_t largest_component = 0;
  std::vector<std::pair<SegmentId, SegmentId>> unreachable;  // (from, to), at most 10
  // Number of two-hop detours that leave a skyroad via an adjacent floor and
  // land on a different skyroad of the original floor.
  std::size_t cross_skyroad_detours = 0;
};

ReachabilityReport check_reachability(const SkyroadGraph& graph);

// Tarjan components; component ids in order of completion.
std::vector<int> strongly_connected_components(const SkyroadGraph& graph, std::size_t* count = nullptr);

// Graph file: {"meta": ..., "segments": [...], "edges": [[i, j], ...]}.
nlohmann::json graph_to_json(const SkyroadGraph& graph, const nlohmann::json& meta = nlohmann::json::object());
SkyroadGraph graph_from_json(const nlohmann::json& doc);
// Digest of the segment and edge content only.
std::string graph_digest(const SkyroadGraph& graph);

// CSV: floor,skyroad,iso,direction,kind,order,x,y
void write_streamlines_csv(std::span<const Skyroad> skyroads, std::ostream& out);

std::string_view to_string(SkyroadKind kind);

}  // namespace skyroad
