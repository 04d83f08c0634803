#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skyroad/airspace.hpp"
#include "skyroad/cutm.hpp"
#include "skyroad/skyroads.hpp"
#include "skyroad/streamfield.hpp"

namespace skyroad {

// Generation and supervision parameters. Unset lengths derive from the
// grid spacing d of the landscape: delta_min = 2d, seg_length = d,
// r_v = 1.5d.
struct RunConfig {
  SolverConfig solver;
  int levels = 10;
  std::optional<double> delta_min_m;
  std::optional<double> seg_length_m;
  std::optional<double> r_v_m;
  bool include_walls = true;
  int n_t = 50;

  // Fills the derived lengths for a landscape. Throws ValidationError for
  // non-positive parameters.
  RunConfig resolved(const LandscapeSpec& spec) const;
  nlohmann::json to_json() const;
};

// Overlays the keys present in `doc` on `base`. Throws ParseError.
RunConfig run_config_from_json(const nlohmann::json& doc, RunConfig base = {});

struct FloorResult {
  FloorSlice slice;
  StreamField field;
  std::vector<Skyroad> skyroads;
  ExtractionReport extraction;
};

struct Network {
  RunConfig config;  // resolved
  std::vector<FloorResult> floors;
  std::vector<Segment> segments;
  SkyroadGraph graph;
  ReachabilityReport reachability;
  std::vector<std::string> warnings;

  nlohmann::json report() const;
};

// Floor fields and streamlines are computed in parallel; segmentation and
// edges follow in floor order.
Network generate_network(const LandscapeSpec& spec, const RunConfig& config);

// Pairs of keep-out zones on a floor whose stream values are closer than
// (psi_max - psi_min) / (4 * levels).
std::vector<std::string> close_level_warnings(const FloorSlice& floor, const StreamField& field, int levels);

}  // namespace skyroad
