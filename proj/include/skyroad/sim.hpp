#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skyroad/cutm.hpp"

namespace skyroad {

struct ScenarioRequest {
  int uas_id = 0;
  int submit_time = 0;
  std::optional<SegmentId> start;
  std::optional<SegmentId> goal;
};

struct ScheduledAnomaly {
  int step = 0;
  Anomaly anomaly;
};

struct Scenario {
  std::uint64_t seed = 0;
  int horizon = 0;
  std::vector<ScenarioRequest> requests;
  bool random_endpoints = false;
  std::vector<ScheduledAnomaly> anomalies;  // optional extension
};

// Throws ScenarioError (bad horizon, submit time outside [0, horizon),
// duplicate ids, missing endpoints without random_endpoints).
void validate_scenario(const Scenario& scenario);
// {seed, horizon, requests: [{id, t, start?, goal?}], random_endpoints, anomalies?}
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json scenario_to_json(const Scenario& scenario);
std::string scenario_digest(const Scenario& scenario);

// Uniform draw in [0, n) by rejection on raw 64-bit output, so the stream
// is identical across standard libraries.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n);

// Draws start and goal uniformly from W until a live path exists, at most
// `retries` times.
EndpointChooser random_endpoint_chooser(std::uint64_t seed, int retries = 50);

struct SimConfig {
  SupervisorConfig supervisor;
  bool check_invariants = false;
};

struct UasSummary {
  int uas_id = 0;
  int t_request = 0;
  bool allocated = false;
  int t_alloc = -1;
  int t_max = 0;
  int t_check = 0;
  bool arrived = false;
  int t_arrive = -1;
  std::string status;  // pending, active, arrived, disrupted
  std::vector<SegmentId> path;
};

struct SimTrace {
  nlohmann::json header = nlohmann::json::object();
  std::vector<StepRecord> steps;
  std::vector<UasSummary> uas;  // in allocation order, then pending requests
  // Filled when SimConfig::check_invariants is set: "k: message".
  std::vector<std::string> invariant_violations;
};

// Drives the supervisor for k in [0, horizon). Requests without endpoints
// use `chooser`, or the seeded random chooser when none is given.
// Throws ScenarioError for requests naming segments outside V.
SimTrace run(const SkyroadGraph& graph, const Scenario& scenario, const SimConfig& config = {},
             EndpointChooser chooser = {});

struct Violation {
  std::string check;
  int step = -1;
  int uas_id = -1;
  std::string detail;
};

struct VerificationReport {
  bool passed = true;
  std::vector<Violation> violations;
  nlohmann::json to_json() const;
};

// Exhaustive safety scan: exclusive occupancy, motion along E, direction
// and unit speed, arrival by t_check, FCFS order, adherence to the reserved
// path.
VerificationReport verify_trace(const SkyroadGraph& graph, const SimTrace& trace);

// CSV `uas,t_request,t_max,t_check,arrived` sorted by t_request.
std::string summarize(const SimTrace& trace);

// Newline-delimited JSON: header, one record per step, one line per UAS.
void write_trace(const SimTrace& trace, std::ostream& out);
std::string trace_text(const SimTrace& trace);
SimTrace read_trace(std::istream& in);
std::string trace_digest(const SimTrace& trace);

// The 20 (t_request, t_max, t_check) rows of the reference timing table.
struct TimingRow {
  int uas_id;
  int t_request;
  int t_max;
  int t_check;
};
const std::vector<TimingRow>& reference_timing_table();

// Builds a scenario with explicit endpoints that reproduces `rows` on this
// graph: each request is given endpoints whose live shortest path, at its
// submit step, has exactly t_max + 1 segments. Throws ScenarioError if some
// row cannot be matched.
Scenario build_timing_scenario(const SkyroadGraph& graph, const std::vector<TimingRow>& rows, std::uint64_t seed,
                               int horizon, const SimConfig& config = {});

// `count` requests at uniform submit times in [0, horizon), random endpoints.
Scenario make_random_scenario(std::uint64_t seed, int count, int horizon);

// Allocated and traveled segments and current positions at step k.
struct PlotFrame {
  struct Item {
    int uas_id;
    std::string status;  // arrived, en_route, disrupted
    int order;
    SegmentId segment;
  };
  int k = 0;
  std::vector<Item> allocated;
  std::vector<Item> traveled;
  std::vector<Item> positions;
};
// Throws RangeError when k lies outside the recorded steps.
PlotFrame plot_frame(const SimTrace& trace, int k);

}  // namespace skyroad
