// cutm: generate skyroad networks, run and verify supervised simulations,
// export plot data.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "skyroad/digest.hpp"
#include "skyroad/errors.hpp"
#include "skyroad/log.hpp"
#include "skyroad/pipeline.hpp"
#include "skyroad/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace skyroad;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInput = 2;
constexpr int kExitUnsafe = 3;

struct Options {
  std::string landscape;
  std::string graph;
  std::string scenario;
  std::string trace;
  std::string out = ".";
  std::string config;
  std::uint64_t seed = 0;
  std::vector<int> floors;
  std::vector<int> steps;
  std::optional<int> nt;
  std::optional<double> delta_min;
  std::optional<double> seg_length;
  std::optional<double> r_v;
  std::optional<int> levels;
  std::string kind = "random";
  int count = 20;
  int horizon = 500;
  bool check_invariants = false;
};

json read_json_file(const fs::path& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + what + " file '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(what + " '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

// Config file first, flags on top.
RunConfig make_config(const Options& o) {
  RunConfig cfg;
  if (!o.config.empty()) cfg = run_config_from_json(read_json_file(o.config, "config"));
  if (o.levels) cfg.levels = *o.levels;
  if (o.delta_min) cfg.delta_min_m = *o.delta_min;
  if (o.seg_length) cfg.seg_length_m = *o.seg_length;
  if (o.r_v) cfg.r_v_m = *o.r_v;
  if (o.nt) cfg.n_t = *o.nt;
  return cfg;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  return out;
}

void write_comment_header(std::ostream& out, const json& meta) {
  for (const auto& [key, value] : meta.items()) out << "# " << key << "=" << value.dump() << '\n';
}

json generate_to(const LandscapeSpec& spec, const std::string& landscape_digest, const RunConfig& cfg,
                 const fs::path& out_dir, Network* keep = nullptr) {
  Network net = generate_network(spec, cfg);
  fs::create_directories(out_dir);
  const json meta = {{"landscape_sha256", landscape_digest}, {"config", net.config.to_json()}};

  {
    auto out = open_out(out_dir / "graph.json");
    out << graph_to_json(net.graph, meta).dump() << '\n';
  }
  json file_meta = meta;
  file_meta["graph_digest"] = graph_digest(net.graph);
  for (const FloorResult& f : net.floors) {
    const std::string h = std::to_string(f.slice.floor_index);
    auto lines = open_out(out_dir / ("streamlines_floor" + h + ".csv"));
    write_comment_header(lines, file_meta);
    write_streamlines_csv(f.skyroads, lines);
    auto psi = open_out(out_dir / ("psi_floor" + h + ".csv"));
    write_comment_header(psi, file_meta);
    write_field_csv(f.field, psi);
  }
  json report = net.report();
  report["meta"] = file_meta;
  {
    auto out = open_out(out_dir / "report.json");
    out << report.dump(2) << '\n';
  }
  spdlog::info("{} segments, {} edges, strongly connected: {}", net.graph.node_count(), net.graph.edge_count(),
               net.reachability.strongly_connected);
  if (keep != nullptr) *keep = std::move(net);
  return report;
}

SkyroadGraph load_graph(const fs::path& path) { return graph_from_json(read_json_file(path, "graph")); }

int cmd_generate(const Options& o) {
  const LandscapeSpec spec = load_landscape(o.landscape);
  const json report = generate_to(spec, file_sha256(o.landscape), make_config(o), o.out);
  std::cout << "floors: " << report["floors"].size() << ", segments: " << report["nodes"]
            << ", edges: " << report["edges"]
            << ", strongly connected: " << report["reachability"]["strongly_connected"] << '\n';
  return kExitOk;
}

int cmd_simulate(const Options& o) {
  const RunConfig cfg = make_config(o);
  SkyroadGraph graph;
  if (!o.graph.empty()) {
    graph = load_graph(o.graph);
  } else if (!o.landscape.empty()) {
    Network net;
    generate_to(load_landscape(o.landscape), file_sha256(o.landscape), cfg, o.out, &net);
    graph = std::move(net.graph);
  } else {
    throw ValidationError("simulate needs --graph or --landscape");
  }
  const Scenario scenario = load_scenario(o.scenario);

  SimConfig sim_cfg;
  sim_cfg.supervisor.n_t = cfg.n_t;
  sim_cfg.check_invariants = o.check_invariants;
  const SimTrace trace = run(graph, scenario, sim_cfg);
  const VerificationReport verification = verify_trace(graph, trace);

  fs::create_directories(o.out);
  {
    auto out = open_out(fs::path(o.out) / "trace.ndjson");
    write_trace(trace, out);
  }
  json meta = trace.header;
  meta["trace_sha256"] = trace_digest(trace);
  {
    auto out = open_out(fs::path(o.out) / "summary.csv");
    write_comment_header(out, meta);
    out << summarize(trace);
  }
  json vdoc = verification.to_json();
  vdoc["meta"] = meta;
  vdoc["invariant_violations"] = trace.invariant_violations;
  {
    auto out = open_out(fs::path(o.out) / "verification.json");
    out << vdoc.dump(2) << '\n';
  }
  std::size_t allocated = 0;
  for (const UasSummary& s : trace.uas) allocated += s.allocated;
  std::cout << "steps: " << trace.steps.size() << ", allocated: " << allocated << "/" << trace.uas.size()
            << ", verification: " << (verification.passed ? "pass" : "FAIL") << '\n';
  for (const Violation& v : verification.violations) {
    spdlog::error("{} at step {} (UAS {}): {}", v.check, v.step, v.uas_id, v.detail);
  }
  return verification.passed && trace.invariant_violations.empty() ? kExitOk : kExitUnsafe;
}

SimTrace load_trace(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read trace file '" + path.string() + "'");
  return read_trace(in);
}

void require_same_graph(const SimTrace& trace, const SkyroadGraph& graph) {
  const std::string expected = trace.header.value("graph_digest", "");
  const std::string actual = graph_digest(graph);
  if (expected != actual) {
    throw DigestMismatchError("trace was produced from graph " + expected + ", not " + actual);
  }
}

int cmd_verify(const Options& o) {
  const SkyroadGraph graph = load_graph(o.graph);
  const SimTrace trace = load_trace(o.trace);
  require_same_graph(trace, graph);
  const VerificationReport report = verify_trace(graph, trace);
  json doc = report.to_json();
  doc["meta"] = {{"trace_sha256", file_sha256(o.trace)}, {"graph_digest", graph_digest(graph)}};
  std::cout << doc.dump(2) << '\n';
  return report.passed ? kExitOk : kExitUnsafe;
}

int cmd_export_plots(const Options& o) {
  const SkyroadGraph graph = load_graph(o.graph);
  const SimTrace trace = load_trace(o.trace);
  require_same_graph(trace, graph);

  std::set<int> floors(o.floors.begin(), o.floors.end());
  if (floors.empty()) {
    for (const Segment& s : graph.segments()) floors.insert(s.floor_index);
  }
  std::vector<int> steps = o.steps;
  if (steps.empty()) steps.push_back(static_cast<int>(trace.steps.size()) - 1);

  fs::create_directories(o.out);
  const json meta = {{"trace_sha256", file_sha256(o.trace)}, {"graph_digest", graph_digest(graph)}};
  int files = 0;
  for (int k : steps) {
    const PlotFrame frame = plot_frame(trace, k);
    for (int h : floors) {
      const std::string suffix = "_step" + std::to_string(k) + "_floor" + std::to_string(h) + ".csv";
      auto write_items = [&](const std::string& name, const std::vector<PlotFrame::Item>& items) {
        auto out = open_out(fs::path(o.out) / (name + suffix));
        write_comment_header(out, meta);
        out << "# step=" << k << "\n# floor=" << h << '\n';
        out << "uas,status,order,segment,x_start,y_start,x_end,y_end,x_mid,y_mid,z\n";
        for (const PlotFrame::Item& item : items) {
          const Segment& s = graph.segment(item.segment);
          if (s.floor_index != h) continue;
          out << item.uas_id << ',' << item.status << ',' << item.order << ',' << item.segment << ',' << s.start.x
              << ',' << s.start.y << ',' << s.end.x << ',' << s.end.y << ',' << s.midpoint.x << ','
              << s.midpoint.y << ',' << s.midpoint.z << '\n';
        }
        ++files;
      };
      write_items("allocated", frame.allocated);
      write_items("traveled", frame.traveled);
      write_items("positions", frame.positions);
    }
  }
  std::cout << "wrote " << files << " files to " << o.out << '\n';
  return kExitOk;
}

int cmd_scenario(const Options& o) {
  Scenario scenario;
  if (o.kind == "random") {
    scenario = make_random_scenario(o.seed, o.count, o.horizon);
  } else if (o.kind == "timing") {
    SkyroadGraph graph;
    if (!o.graph.empty()) {
      graph = load_graph(o.graph);
    } else if (!o.landscape.empty()) {
      graph = generate_network(load_landscape(o.landscape), make_config(o)).graph;
    } else {
      throw ValidationError("--kind timing needs --graph or --landscape");
    }
    SimConfig sim_cfg;
    sim_cfg.supervisor.n_t = make_config(o).n_t;
    scenario = build_timing_scenario(graph, reference_timing_table(), o.seed, o.horizon, sim_cfg);
  } else {
    throw ValidationError("unknown scenario kind '" + o.kind + "'");
  }
  const fs::path path = fs::path(o.out).extension() == ".json" ? fs::path(o.out) : fs::path(o.out) / "scenario.json";
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  auto out = open_out(path);
  out << scenario_to_json(scenario).dump(2) << '\n';
  std::cout << "wrote " << scenario.requests.size() << " requests to " << path.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();
  CLI::App app{"Skyroad network generation and C-UTM supervision"};
  app.require_subcommand(1);
  Options o;

  auto add_generation_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "JSON config file (flags override it)");
    cmd->add_option("--levels", o.levels, "candidate streamline levels per floor");
    cmd->add_option("--delta-min", o.delta_min, "minimum skyroad bandwidth in meters");
    cmd->add_option("--seg-length", o.seg_length, "segment length in meters");
    cmd->add_option("--rv", o.r_v, "vertical link radius in meters");
    cmd->add_option("--nt", o.nt, "clearing period N_T in steps");
  };

  auto* generate = app.add_subcommand("generate", "build the skyroad graph for a landscape");
  generate->add_option("--landscape", o.landscape, "landscape JSON")->required();
  generate->add_option("--out", o.out, "output directory");
  add_generation_flags(generate);

  auto* simulate = app.add_subcommand("simulate", "run a scenario on a skyroad graph");
  simulate->add_option("--graph", o.graph, "graph JSON from generate");
  simulate->add_option("--landscape", o.landscape, "generate the graph from this landscape first");
  simulate->add_option("--scenario", o.scenario, "scenario JSON")->required();
  simulate->add_option("--out", o.out, "output directory");
  simulate->add_flag("--check-invariants", o.check_invariants, "check supervisor invariants after every step");
  add_generation_flags(simulate);

  auto* verify = app.add_subcommand("verify", "re-verify a trace against its graph");
  verify->add_option("--graph", o.graph, "graph JSON")->required();
  verify->add_option("--trace", o.trace, "trace NDJSON")->required();

  auto* plots = app.add_subcommand("export-plots", "write per-floor CSVs of allocated/traveled paths");
  plots->add_option("--graph", o.graph, "graph JSON")->required();
  plots->add_option("--trace", o.trace, "trace NDJSON")->required();
  plots->add_option("--floors", o.floors, "floors to export, comma separated (default all)")->delimiter(',');
  plots->add_option("--steps", o.steps, "steps to export, comma separated (default last)")->delimiter(',');
  plots->add_option("--out", o.out, "output directory");

  auto* scenario = app.add_subcommand("scenario", "write a scenario file");
  scenario->add_option("--kind", o.kind, "timing or random")->check(CLI::IsMember({"timing", "random"}));
  scenario->add_option("--graph", o.graph, "graph JSON (timing)");
  scenario->add_option("--landscape", o.landscape, "landscape JSON (timing, when no graph)");
  scenario->add_option("--seed", o.seed, "random seed");
  scenario->add_option("--count", o.count, "number of UAS (random)");
  scenario->add_option("--horizon", o.horizon, "horizon in steps");
  scenario->add_option("--out", o.out, "output file or directory");
  add_generation_flags(scenario);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*generate) return cmd_generate(o);
    if (*simulate) return cmd_simulate(o);
    if (*verify) return cmd_verify(o);
    if (*plots) return cmd_export_plots(o);
    if (*scenario) return cmd_scenario(o);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return is_input_error(e) ? kExitInput : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
