#include "skyroad/pipeline.hpp"

#include <algorithm>
#include <future>

#include "logger.hpp"
#include "skyroad/errors.hpp"

namespace skyroad {

RunConfig RunConfig::resolved(const LandscapeSpec& spec) const {
  RunConfig out = *this;
  const double d = std::max(spec.spacing_x(), spec.spacing_y());
  if (!out.delta_min_m) out.delta_min_m = 2.0 * d;
  if (!out.seg_length_m) out.seg_length_m = d;
  if (!out.r_v_m) out.r_v_m = 1.5 * d;
  out.solver.validate();
  if (out.levels < 2) throw ValidationError("levels must be >= 2");
  if (!(*out.delta_min_m > 0.0)) throw ValidationError("delta_min must be positive");
  if (!(*out.seg_length_m > 0.0)) throw ValidationError("seg_length must be positive");
  if (*out.r_v_m < 0.0) throw ValidationError("r_v must be non-negative");
  if (out.n_t <= 0) throw ValidationError("N_T must be positive");
  return out;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json doc = {{"solver",
                         {{"tolerance", solver.tolerance},
                          {"max_iterations", solver.max_iterations},
                          {"omega", solver.relaxation_omega}}},
                        {"skyroads", {{"levels", levels}, {"include_walls", include_walls}}},
                        {"supervisor", {{"n_t", n_t}}}};
  if (delta_min_m) doc["skyroads"]["delta_min_m"] = *delta_min_m;
  if (seg_length_m) doc["skyroads"]["seg_length_m"] = *seg_length_m;
  if (r_v_m) doc["skyroads"]["r_v_m"] = *r_v_m;
  return doc;
}

RunConfig run_config_from_json(const nlohmann::json& doc, RunConfig base) {
  try {
    if (!doc.is_object()) throw ParseError("config must be a JSON object");
    if (doc.contains("solver")) {
      const auto& s = doc.at("solver");
      base.solver.tolerance = s.value("tolerance", base.solver.tolerance);
      base.solver.max_iterations = s.value("max_iterations", base.solver.max_iterations);
      base.solver.relaxation_omega = s.value("omega", base.solver.relaxation_omega);
    }
    if (doc.contains("skyroads")) {
      const auto& s = doc.at("skyroads");
      base.levels = s.value("levels", base.levels);
      base.include_walls = s.value("include_walls", base.include_walls);
      if (s.contains("delta_min_m")) base.delta_min_m = s.at("delta_min_m").get<double>();
      if (s.contains("seg_length_m")) base.seg_length_m = s.at("seg_length_m").get<double>();
      if (s.contains("r_v_m")) base.r_v_m = s.at("r_v_m").get<double>();
    }
    if (doc.contains("supervisor")) base.n_t = doc.at("supervisor").value("n_t", base.n_t);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed config: ") + e.what());
  }
  return base;
}

std::vector<std::string> close_level_warnings(const FloorSlice& floor, const StreamField& field, int levels) {
  std::vector<std::string> out;
  const double threshold = (field.psi_max - field.psi_min) / (4.0 * levels);
  for (std::size_t a = 0; a < field.zone_levels.size(); ++a) {
    for (std::size_t b = a + 1; b < field.zone_levels.size(); ++b) {
      if (std::abs(field.zone_levels[a] - field.zone_levels[b]) < threshold) {
        out.push_back("floor " + std::to_string(floor.floor_index) + ": keep-out zones " +
                      floor.zones[a].obstacle_ids.front() + " and " + floor.zones[b].obstacle_ids.front() +
                      " have nearly equal stream values");
      }
    }
  }
  return out;
}

namespace {

FloorResult solve_floor(const LandscapeSpec& spec, int h, const RunConfig& config) {
  FloorResult r;
  r.slice = slice_floor(spec, h);
  const BoundaryValues bvals = external_boundary_values(r.slice);
  r.field = solve_laplace(r.slice, bvals, obstacle_levels(r.slice, bvals), config.solver);
  StreamlineOptions options;
  options.levels = config.levels;
  options.delta_min = *config.delta_min_m;
  options.include_walls = config.include_walls;
  r.skyroads = assign_directions(extract_streamlines(r.field, r.slice, options, &r.extraction), r.slice);
  return r;
}

}  // namespace

Network generate_network(const LandscapeSpec& spec, const RunConfig& config) {
  validate_landscape(spec);
  Network net;
  net.config = config.resolved(spec);

  std::vector<std::future<FloorResult>> jobs;
  for (int h = 1; h <= spec.n_z; ++h) {
    jobs.push_back(std::async(std::launch::async, solve_floor, std::cref(spec), h, std::cref(net.config)));
  }
  for (auto& job : jobs) net.floors.push_back(job.get());

  for (const FloorResult& f : net.floors) {
    logger().info("floor {}: {} zones, {} SOR sweeps, residual {:.3g}, {} skyroads", f.slice.floor_index,
                 f.slice.zones.size(), f.field.iterations, f.field.residual, f.skyroads.size());
    for (const std::string& w : close_level_warnings(f.slice, f.field, net.config.levels)) net.warnings.push_back(w);
    for (const std::string& w : f.extraction.warnings) net.warnings.push_back(w);
    const auto segments = segment_skyroads(f.skyroads, *net.config.seg_length_m,
                                           static_cast<SegmentId>(net.segments.size()), &net.warnings);
    net.segments.insert(net.segments.end(), segments.begin(), segments.end());
  }
  net.graph = build_edges(net.segments, *net.config.r_v_m);
  net.reachability = check_reachability(net.graph);
  for (const std::string& w : net.warnings) logger().warn("{}", w);
  if (!net.reachability.strongly_connected) {
    logger().warn("skyroad graph has {} strongly connected components", net.reachability.component_count);
  }
  return net;
}

nlohmann::json Network::report() const {
  nlohmann::json floors_doc = nlohmann::json::array();
  for (const FloorResult& f : floors) {
    std::size_t segs = 0;
    for (const Segment& s : segments) segs += s.floor_index == f.slice.floor_index;
    floors_doc.push_back({{"floor", f.slice.floor_index},
                          {"elevation", f.slice.elevation},
                          {"keepout_zones", f.slice.zones.size()},
                          {"sor_iterations", f.field.iterations},
                          {"residual", f.field.residual},
                          {"streamlines", f.skyroads.size()},
                          {"segments", segs},
                          {"candidates", f.extraction.candidates},
                          {"dropped_for_bandwidth", f.extraction.dropped_for_bandwidth},
                          {"dropped_inside_wrap", f.extraction.dropped_inside_wrap},
                          {"dropped_closed_loops", f.extraction.dropped_closed_loops},
                          {"dropped_for_parity", f.extraction.dropped_for_parity},
                          {"bandwidth_violations", f.extraction.bandwidth_violations}});
  }
  nlohmann::json unreachable = nlohmann::json::array();
  for (const auto& [a, b] : reachability.unreachable) unreachable.push_back({a, b});
  return {{"floors", std::move(floors_doc)},
          {"nodes", graph.node_count()},
          {"edges", graph.edge_count()},
          {"reachability",
           {{"strongly_connected", reachability.strongly_connected},
            {"components", reachability.component_count},
            {"largest_component", reachability.largest_component},
            {"unreachable_sample", std::move(unreachable)},
            {"cross_skyroad_detours", reachability.cross_skyroad_detours}}},
          {"warnings", warnings},
          {"config", config.to_json()}};
}

}  // namespace skyroad
