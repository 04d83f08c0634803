#include "skyroad/skyroads.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "skyroad/contour.hpp"
#include "skyroad/digest.hpp"
#include "skyroad/errors.hpp"

namespace skyroad {

namespace {

double mean_along(const Polyline& line, Vec2 axis) {
  if (line.empty()) return 0.0;
  double sum = 0.0;
  for (const Vec2& p : line) sum += dot(p, axis);
  return sum / static_cast<double>(line.size());
}

struct Line {
  double level = 0.0;
  SkyroadKind kind = SkyroadKind::uniform;
  Polyline points;
  bool mandatory() const { return kind != SkyroadKind::uniform; }
};

// Straight boundary streamline from `from` to `to` through the grid nodes.
Polyline wall_line(const FloorSlice& floor, Vec2 from, Vec2 to) {
  const int nodes = std::abs(floor.n1.x) > 0.5 ? floor.n_x : floor.n_y;
  Polyline line;
  for (int k = 0; k < nodes; ++k) {
    line.push_back(k == nodes - 1 ? to : from + (to - from) * (static_cast<double>(k) / (nodes - 1)));
  }
  return line;
}

// Two branches running between the loop's extreme points along n1.
std::pair<Polyline, Polyline> split_loop(const Polyline& loop, Vec2 n1) {
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t k = 1; k < loop.size(); ++k) {
    if (dot(loop[k], n1) < dot(loop[lo], n1)) lo = k;
    if (dot(loop[k], n1) > dot(loop[hi], n1)) hi = k;
  }
  const std::size_t n = loop.size();
  Polyline forward;
  Polyline backward;
  for (std::size_t k = lo;; k = (k + 1) % n) {
    forward.push_back(loop[k]);
    if (k == hi) break;
  }
  for (std::size_t k = lo;; k = (k + n - 1) % n) {
    backward.push_back(loop[k]);
    if (k == hi) break;
  }
  return {forward, backward};
}

}  // namespace

std::string_view to_string(SkyroadKind kind) {
  switch (kind) {
    case SkyroadKind::uniform: return "uniform";
    case SkyroadKind::wrapper: return "wrapper";
    case SkyroadKind::wall: return "wall";
  }
  return "uniform";
}

std::vector<Skyroad> extract_streamlines(const StreamField& field, const FloorSlice& floor,
                                         const StreamlineOptions& options, ExtractionReport* report) {
  if (options.levels < 2) throw ValidationError("levels (n_s) must be >= 2");
  if (!(options.delta_min > 0.0)) throw ValidationError("delta_min must be positive");
  if (!field.converged()) {
    throw UnconvergedFieldError("floor " + std::to_string(field.floor_index) + " residual " +
                                std::to_string(field.residual) + " above tolerance");
  }
  ExtractionReport local;
  ExtractionReport& rep = report != nullptr ? *report : local;

  const double psi_min = field.psi_min;
  const double psi_max = field.psi_max;
  const double range = psi_max - psi_min;
  const double width = std::abs(dot(floor.r_b - floor.r_a, floor.n2));
  // Stream offset of the wrapping lines: about delta_min of physical
  // clearance in the undisturbed flow on either side of a zone.
  const double offset = range * options.delta_min / width;

  std::vector<double> zone_levels = field.zone_levels;
  std::sort(zone_levels.begin(), zone_levels.end());
  std::vector<std::pair<double, double>> clusters;
  for (double z : zone_levels) {
    if (!clusters.empty() && z - clusters.back().second < 3.0 * offset) {
      clusters.back().second = z;
    } else {
      clusters.push_back({z, z});
    }
  }

  std::vector<Line> candidates;
  std::vector<std::pair<double, double>> shadows;
  for (const auto& [lo_zone, hi_zone] : clusters) {
    const double lo = lo_zone - offset;
    const double hi = hi_zone + offset;
    shadows.push_back({lo, hi});
    // Next to a lateral wall the wall itself is the wrapping streamline.
    if (lo > psi_min + 0.5 * offset) candidates.push_back({lo, SkyroadKind::wrapper, {}});
    if (hi < psi_max - 0.5 * offset) candidates.push_back({hi, SkyroadKind::wrapper, {}});
  }
  for (int m = 1; m <= options.levels; ++m) {
    const double level = psi_min + m * range / (options.levels + 1);
    const bool shadowed = std::any_of(shadows.begin(), shadows.end(),
                                      [&](const auto& s) { return s.first < level && level < s.second; });
    if (shadowed) {
      ++rep.dropped_inside_wrap;
      continue;
    }
    candidates.push_back({level, SkyroadKind::uniform, {}});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Line& a, const Line& b) { return a.level < b.level; });
  rep.candidates += static_cast<int>(candidates.size());

  const GridView grid{field.n_x, field.n_y, field.spacing_x, field.spacing_y, field.psi};
  std::vector<Line> sequence;
  std::vector<Line> loop_branches;
  if (options.include_walls) sequence.push_back({psi_min, SkyroadKind::wall, wall_line(floor, floor.r_a, floor.r_c)});
  for (const Line& cand : candidates) {
    auto contours = trace_contours(grid, cand.level, floor.keepout_mask);
    std::vector<Line> open;
    for (auto& c : contours) {
      if (c.points.size() < 2) continue;
      if (!c.closed) {
        open.push_back({cand.level, cand.kind, std::move(c.points)});
      } else if (cand.mandatory()) {
        auto [a, b] = split_loop(c.points, floor.n1);
        loop_branches.push_back({cand.level, cand.kind, std::move(a)});
        loop_branches.push_back({cand.level, cand.kind, std::move(b)});
      } else {
        ++rep.dropped_closed_loops;
      }
    }
    std::stable_sort(open.begin(), open.end(), [&](const Line& a, const Line& b) {
      return mean_along(a.points, floor.n2) < mean_along(b.points, floor.n2);
    });
    for (auto& l : open) sequence.push_back(std::move(l));
  }
  if (options.include_walls) sequence.push_back({psi_max, SkyroadKind::wall, wall_line(floor, floor.r_b, floor.r_d)});

  // Greedy bandwidth thinning against the last retained line. Optional
  // (uniform) lines yield to mandatory ones; two mandatory lines closer than
  // delta_min are kept and counted.
  std::vector<Line> kept;
  for (Line& cand : sequence) {
    bool drop = false;
    while (!kept.empty()) {
      if (polyline_distance(kept.back().points, cand.points) >= options.delta_min) break;
      if (!cand.mandatory()) {
        drop = true;
        break;
      }
      if (!kept.back().mandatory()) {
        kept.pop_back();
        ++rep.dropped_for_bandwidth;
        continue;
      }
      ++rep.bandwidth_violations;
      break;
    }
    if (drop) {
      ++rep.dropped_for_bandwidth;
      continue;
    }
    kept.push_back(std::move(cand));
  }
  if (rep.bandwidth_violations > 0) {
    rep.warnings.push_back("floor " + std::to_string(floor.floor_index) + ": " +
                           std::to_string(rep.bandwidth_violations) +
                           " wrapping/wall line pairs closer than delta_min");
  }

  if (options.include_walls && kept.size() % 2 == 1) {
    // Drop the most crowded optional line so the walls end up with opposite signs.
    std::optional<std::size_t> victim;
    double crowd = 0.0;
    for (std::size_t k = 1; k + 1 < kept.size(); ++k) {
      if (kept[k].mandatory()) continue;
      const double gap = std::min(polyline_distance(kept[k - 1].points, kept[k].points),
                                  polyline_distance(kept[k].points, kept[k + 1].points));
      if (!victim || gap < crowd) {
        victim = k;
        crowd = gap;
      }
    }
    if (victim) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(*victim));
      ++rep.dropped_for_parity;
    } else {
      rep.warnings.push_back("floor " + std::to_string(floor.floor_index) +
                             ": odd skyroad count, boundary corridors share a direction");
    }
  }
  if (!loop_branches.empty()) {
    rep.warnings.push_back("floor " + std::to_string(floor.floor_index) + ": " +
                           std::to_string(loop_branches.size() / 2) + " closed wrapping loop(s) split");
    for (auto& b : loop_branches) kept.push_back(std::move(b));
  }

  const auto interior = std::count_if(kept.begin(), kept.end(),
                                      [](const Line& l) { return l.kind != SkyroadKind::wall; });
  if (interior < 2) {
    throw NoStreamlinesError("floor " + std::to_string(floor.floor_index) + ": only " +
                             std::to_string(interior) + " streamline(s) satisfy delta_min = " +
                             std::to_string(options.delta_min));
  }

  std::vector<Skyroad> out;
  out.reserve(kept.size());
  for (Line& l : kept) {
    Skyroad s;
    s.floor_index = floor.floor_index;
    s.elevation = floor.elevation;
    s.iso_value = l.level;
    s.kind = l.kind;
    s.polyline = std::move(l.points);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [&](const Skyroad& a, const Skyroad& b) {
    if (a.iso_value != b.iso_value) return a.iso_value < b.iso_value;
    return mean_along(a.polyline, floor.n2) < mean_along(b.polyline, floor.n2);
  });
  for (std::size_t k = 0; k < out.size(); ++k) out[k].index_on_floor = static_cast<int>(k);
  return out;
}

std::vector<Skyroad> assign_directions(std::vector<Skyroad> skyroads, const FloorSlice& floor) {
  std::stable_sort(skyroads.begin(), skyroads.end(), [&](const Skyroad& a, const Skyroad& b) {
    if (a.iso_value != b.iso_value) return a.iso_value < b.iso_value;
    return mean_along(a.polyline, floor.n2) < mean_along(b.polyline, floor.n2);
  });
  for (std::size_t k = 0; k < skyroads.size(); ++k) {
    Skyroad& s = skyroads[k];
    s.index_on_floor = static_cast<int>(k);
    s.direction = k % 2 == 0 ? 1 : -1;
    if (s.polyline.size() >= 2) {
      const double progress = dot(s.polyline.back() - s.polyline.front(), floor.n1);
      if (progress * s.direction < 0.0) std::reverse(s.polyline.begin(), s.polyline.end());
    }
  }
  return skyroads;
}

std::vector<Segment> segment_skyroads(std::span<const Skyroad> skyroads, double seg_length, SegmentId first_id,
                                      std::vector<std::string>* warnings) {
  if (!(seg_length > 0.0)) throw ValidationError("seg_length must be positive");
  std::vector<Segment> out;
  SegmentId next_id = first_id;
  for (const Skyroad& road : skyroads) {
    const double total = polyline_length(road.polyline);
    if (road.polyline.size() < 2 || total <= 0.0) {
      if (warnings != nullptr) {
        warnings->push_back("floor " + std::to_string(road.floor_index) + " skyroad " +
                            std::to_string(road.index_on_floor) + " is degenerate and was dropped");
      }
      continue;
    }
    const auto whole = static_cast<int>(std::floor(total / seg_length + 1e-9));
    const double remainder = std::max(0.0, total - whole * seg_length);
    int pieces = whole;
    if (whole == 0) {
      pieces = 1;
    } else if (remainder >= 0.5 * seg_length) {
      pieces = whole + 1;
    }
    for (int k = 0; k < pieces; ++k) {
      const double s0 = k * seg_length;
      const double s1 = (k == pieces - 1) ? total : (k + 1) * seg_length;
      Segment seg;
      seg.id = next_id++;
      seg.floor_index = road.floor_index;
      seg.skyroad_index = road.index_on_floor;
      seg.arc_index = k;
      seg.length = s1 - s0;
      seg.start = point_at_arc_length(road.polyline, s0);
      seg.end = point_at_arc_length(road.polyline, s1);
      const Vec2 mid = point_at_arc_length(road.polyline, 0.5 * (s0 + s1));
      seg.midpoint = {mid.x, mid.y, road.elevation};
      out.push_back(seg);
    }
  }
  return out;
}

SkyroadGraph::SkyroadGraph(std::vector<Segment> segments, std::vector<Edge> edges)
    : segments_(std::move(segments)), edges_(std::move(edges)) {
  std::sort(segments_.begin(), segments_.end(), [](const Segment& a, const Segment& b) { return a.id < b.id; });
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    if (segments_[k].id != static_cast<SegmentId>(k)) {
      throw ValidationError("segment ids must be contiguous from 0 (missing " + std::to_string(k) + ")");
    }
  }
  const auto n = static_cast<SegmentId>(segments_.size());
  for (const Edge& e : edges_) {
    if (e.from < 0 || e.to < 0 || e.from >= n || e.to >= n) {
      throw ValidationError("edge (" + std::to_string(e.from) + ", " + std::to_string(e.to) +
                            ") references a missing segment");
    }
    if (e.from == e.to) throw ValidationError("self edge on segment " + std::to_string(e.from));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  const std::size_t nodes = segments_.size();
  out_offsets_.assign(nodes + 1, 0);
  in_offsets_.assign(nodes + 1, 0);
  for (const Edge& e : edges_) {
    ++out_offsets_[e.from + 1];
    ++in_offsets_[e.to + 1];
  }
  std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
  out_index_.resize(edges_.size());
  in_index_.resize(edges_.size());
  std::vector<std::uint32_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::uint32_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    out_index_[out_fill[edges_[k].from]++] = static_cast<std::uint32_t>(k);
    in_index_[in_fill[edges_[k].to]++] = static_cast<std::uint32_t>(k);
  }
}

std::span<const std::uint32_t> SkyroadGraph::out_edges(SegmentId id) const {
  const auto k = static_cast<std::size_t>(id);
  return std::span<const std::uint32_t>(out_index_).subspan(out_offsets_[k], out_offsets_[k + 1] - out_offsets_[k]);
}

std::span<const std::uint32_t> SkyroadGraph::in_edges(SegmentId id) const {
  const auto k = static_cast<std::size_t>(id);
  return std::span<const std::uint32_t>(in_index_).subspan(in_offsets_[k], in_offsets_[k + 1] - in_offsets_[k]);
}

std::optional<std::size_t> SkyroadGraph::find_edge(SegmentId from, SegmentId to) const {
  if (!contains(from) || !contains(to)) return std::nullopt;
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{from, to});
  if (it == edges_.end() || *it != Edge{from, to}) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

namespace {

double horizontal_distance(const Segment& a, const Segment& b) {
  return std::hypot(a.midpoint.x - b.midpoint.x, a.midpoint.y - b.midpoint.y);
}

}  // namespace

SkyroadGraph build_edges(std::vector<Segment> segments, double r_v) {
  std::sort(segments.begin(), segments.end(), [](const Segment& a, const Segment& b) { return a.id < b.id; });
  std::vector<Edge> edges;

  // Successors along each skyroad.
  std::map<std::pair<int, int>, std::vector<const Segment*>> chains;
  for (const Segment& s : segments) chains[{s.floor_index, s.skyroad_index}].push_back(&s);
  for (auto& [key, chain] : chains) {
    std::sort(chain.begin(), chain.end(), [](const Segment* a, const Segment* b) { return a->arc_index < b->arc_index; });
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) edges.push_back({chain[k]->id, chain[k + 1]->id});
  }

  if (r_v > 0.0) {
    // Bucket midpoints per floor on an r_v grid; neighbours lie in the 3x3 block.
    using Key = std::pair<long long, long long>;
    std::map<int, std::map<Key, std::vector<const Segment*>>> buckets;
    auto key_of = [r_v](const Segment& s) {
      return Key{static_cast<long long>(std::floor(s.midpoint.x / r_v)),
                 static_cast<long long>(std::floor(s.midpoint.y / r_v))};
    };
    for (const Segment& s : segments) buckets[s.floor_index][key_of(s)].push_back(&s);
    for (const Segment& s : segments) {
      const auto upper = buckets.find(s.floor_index + 1);
      if (upper == buckets.end()) continue;
      const Key k = key_of(s);
      for (long long dx = -1; dx <= 1; ++dx) {
        for (long long dy = -1; dy <= 1; ++dy) {
          const auto cell = upper->second.find({k.first + dx, k.second + dy});
          if (cell == upper->second.end()) continue;
          for (const Segment* other : cell->second) {
            if (horizontal_distance(s, *other) <= r_v) {
              edges.push_back({s.id, other->id});
              edges.push_back({other->id, s.id});
            }
          }
        }
      }
    }
  }
  return SkyroadGraph(std::move(segments), std::move(edges));
}

std::vector<std::string> rule_violations(const SkyroadGraph& graph, double r_v) {
  std::vector<std::string> out;
  for (const Edge& e : graph.edges()) {
    const Segment& a = graph.segment(e.from);
    const Segment& b = graph.segment(e.to);
    const std::string tag = "(" + std::to_string(e.from) + "," + std::to_string(e.to) + ")";
    if (a.floor_index == b.floor_index) {
      if (a.skyroad_index != b.skyroad_index) {
        out.push_back(tag + " changes skyroad within floor " + std::to_string(a.floor_index));
      } else if (b.arc_index != a.arc_index + 1) {
        out.push_back(tag + " is not a forward successor");
      }
    } else if (std::abs(a.floor_index - b.floor_index) != 1) {
      out.push_back(tag + " skips a floor");
    } else if (horizontal_distance(a, b) > r_v * (1.0 + 1e-12)) {
      out.push_back(tag + " vertical link longer than r_v");
    }
  }
  return out;
}

std::vector<int> strongly_connected_components(const SkyroadGraph& graph, std::size_t* count) {
  const std::size_t n = graph.node_count();
  std::vector<int> index(n, -1);
  std::vector<int> low(n, 0);
  std::vector<int> component(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<SegmentId> stack;
  // (node, position in its out-edge list)
  std::vector<std::pair<SegmentId, std::size_t>> frames;
  int next_index = 0;
  int next_component = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.push_back({static_cast<SegmentId>(root), 0});
    index[root] = low[root] = next_index++;
    stack.push_back(static_cast<SegmentId>(root));
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto out = graph.out_edges(v);
      if (pos < out.size()) {
        const SegmentId w = graph.edge(out[pos]).to;
        ++pos;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const SegmentId done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const SegmentId parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        SegmentId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          component[w] = next_component;
        } while (w != done);
        ++next_component;
      }
    }
  }
  if (count != nullptr) *count = static_cast<std::size_t>(next_component);
  return component;
}

ReachabilityReport check_reachability(const SkyroadGraph& graph) {
  ReachabilityReport report;
  report.node_count = graph.node_count();
  if (graph.node_count() == 0) return report;

  std::size_t count = 0;
  const std::vector<int> component = strongly_connected_components(graph, &count);
  report.component_count = count;
  std::vector<std::size_t> sizes(count, 0);
  for (int c : component) ++sizes[c];
  report.largest_component = *std::max_element(sizes.begin(), sizes.end());
  report.strongly_connected = count == 1;

  if (!report.strongly_connected) {
    // Component 0 finished first, so nothing outside it is reachable from it.
    SegmentId source = 0;
    while (component[source] != 0) ++source;
    for (std::size_t t = 0; t < graph.node_count() && report.unreachable.size() < 10; ++t) {
      if (component[t] != 0) report.unreachable.push_back({source, static_cast<SegmentId>(t)});
    }
  }

  for (const Segment& s : graph.segments()) {
    for (std::uint32_t e1 : graph.out_edges(s.id)) {
      const Segment& mid = graph.segment(graph.edge(e1).to);
      if (mid.floor_index == s.floor_index) continue;
      for (std::uint32_t e2 : graph.out_edges(mid.id)) {
        const Segment& back = graph.segment(graph.edge(e2).to);
        if (back.floor_index == s.floor_index && back.skyroad_index != s.skyroad_index) {
          ++report.cross_skyroad_detours;
        }
      }
    }
  }
  return report;
}

nlohmann::json graph_to_json(const SkyroadGraph& graph, const nlohmann::json& meta) {
  nlohmann::json doc;
  doc["meta"] = meta;
  doc["meta"]["graph_digest"] = graph_digest(graph);
  nlohmann::json segs = nlohmann::json::array();
  for (const Segment& s : graph.segments()) {
    segs.push_back({{"id", s.id},
                    {"floor", s.floor_index},
                    {"skyroad", s.skyroad_index},
                    {"arc", s.arc_index},
                    {"midpoint", {s.midpoint.x, s.midpoint.y, s.midpoint.z}},
                    {"length", s.length},
                    {"start", {s.start.x, s.start.y}},
                    {"end", {s.end.x, s.end.y}}});
  }
  doc["segments"] = std::move(segs);
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : graph.edges()) edges.push_back({e.from, e.to});
  doc["edges"] = std::move(edges);
  return doc;
}

SkyroadGraph graph_from_json(const nlohmann::json& doc) {
  std::vector<Segment> segments;
  std::vector<Edge> edges;
  try {
    for (const auto& s : doc.at("segments")) {
      Segment seg;
      seg.id = s.at("id").get<SegmentId>();
      seg.floor_index = s.at("floor").get<int>();
      seg.skyroad_index = s.at("skyroad").get<int>();
      seg.arc_index = s.at("arc").get<int>();
      const auto mid = s.at("midpoint").get<std::vector<double>>();
      if (mid.size() != 3) throw ParseError("segment midpoint must have 3 coordinates");
      seg.midpoint = {mid[0], mid[1], mid[2]};
      seg.length = s.at("length").get<double>();
      if (s.contains("start")) {
        const auto p = s.at("start").get<std::vector<double>>();
        const auto q = s.at("end").get<std::vector<double>>();
        if (p.size() != 2 || q.size() != 2) throw ParseError("segment start/end must be 2D");
        seg.start = {p[0], p[1]};
        seg.end = {q[0], q[1]};
      }
      segments.push_back(seg);
    }
    for (const auto& e : doc.at("edges")) {
      const auto pair = e.get<std::vector<SegmentId>>();
      if (pair.size() != 2) throw ParseError("edge must be [from, to]");
      edges.push_back({pair[0], pair[1]});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed graph document: ") + e.what());
  }
  return SkyroadGraph(std::move(segments), std::move(edges));
}

std::string graph_digest(const SkyroadGraph& graph) {
  std::string canon;
  canon.reserve(graph.node_count() * 96 + graph.edge_count() * 16);
  char buf[256];
  for (const Segment& s : graph.segments()) {
    std::snprintf(buf, sizeof buf, "%d %d %d %d %.17g %.17g %.17g %.17g\n", s.id, s.floor_index, s.skyroad_index,
                  s.arc_index, s.midpoint.x, s.midpoint.y, s.midpoint.z, s.length);
    canon += buf;
  }
  for (const Edge& e : graph.edges()) {
    std::snprintf(buf, sizeof buf, "%d>%d\n", e.from, e.to);
    canon += buf;
  }
  return sha256_hex(canon);
}

void write_streamlines_csv(std::span<const Skyroad> skyroads, std::ostream& out) {
  out << "floor,skyroad,iso,direction,kind,order,x,y\n";
  char buf[160];
  for (const Skyroad& s : skyroads) {
    for (std::size_t k = 0; k < s.polyline.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.10g,%d,%s,%zu,%.6f,%.6f\n", s.floor_index, s.index_on_floor,
                    s.iso_value, s.direction, std::string(to_string(s.kind)).c_str(), k, s.polyline[k].x,
                    s.polyline[k].y);
      out << buf;
    }
  }
}

}  // namespace skyroad
