#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "skyroad/errors.hpp"
#include "skyroad/pipeline.hpp"
#include "skyroad/planner.hpp"
#include "skyroad/sim.hpp"

namespace py = pybind11;
using namespace skyroad;
using nlohmann::json;

namespace {

// JSON crosses the boundary as text; the python package decodes it.
std::string dump(const json& doc) { return doc.dump(); }

struct PyGraph {
  SkyroadGraph graph;
};

struct PyNetwork {
  Network net;
};

struct PyTrace {
  SimTrace trace;
};

RunConfig config_from(const std::string& text) {
  if (text.empty()) return {};
  try {
    return run_config_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_skyroad, m) {
  m.doc() = "Skyroad generation and corridor supervision";

  static py::exception<Error> error(m, "SkyroadError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<PyGraph>(m, "Graph")
      .def_property_readonly("node_count", [](const PyGraph& g) { return g.graph.node_count(); })
      .def_property_readonly("edge_count", [](const PyGraph& g) { return g.graph.edge_count(); })
      .def("digest", [](const PyGraph& g) { return graph_digest(g.graph); })
      .def("to_json", [](const PyGraph& g) { return dump(graph_to_json(g.graph)); })
      .def("reachability_json", [](const PyGraph& g) {
        const ReachabilityReport r = check_reachability(g.graph);
        return dump({{"strongly_connected", r.strongly_connected},
                     {"components", r.component_count},
                     {"largest_component", r.largest_component}});
      });

  m.def("graph_from_json", [](const std::string& text) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("graph is not valid JSON: ") + e.what());
    }
    return PyGraph{graph_from_json(doc)};
  });

  py::class_<PyNetwork>(m, "Network")
      .def_property_readonly("graph", [](const PyNetwork& n) { return PyGraph{n.net.graph}; })
      .def("report_json", [](const PyNetwork& n) { return dump(n.net.report()); })
      .def("streamlines_csv", [](const PyNetwork& n, int floor) {
        for (const FloorResult& f : n.net.floors) {
          if (f.slice.floor_index != floor) continue;
          std::ostringstream out;
          write_streamlines_csv(f.skyroads, out);
          return out.str();
        }
        throw RangeError("no floor " + std::to_string(floor));
      });

  m.def(
      "generate",
      [](const std::string& landscape_path, const std::string& config_json) {
        const LandscapeSpec spec = load_landscape(landscape_path);
        py::gil_scoped_release release;
        return PyNetwork{generate_network(spec, config_from(config_json))};
      },
      py::arg("landscape_path"), py::arg("config_json") = "");

  m.def(
      "astar",
      [](const PyGraph& g, SegmentId start, SegmentId goal) -> py::object {
        const auto path = astar(LiveGraph{&g.graph, {}, {}}, {start, goal, 0});
        if (!path) return py::none();
        return py::make_tuple(path->segment_ids, path->total_cost);
      },
      py::arg("graph"), py::arg("start"), py::arg("goal"));

  py::class_<PyTrace>(m, "Trace")
      .def_property_readonly("steps", [](const PyTrace& t) { return t.trace.steps.size(); })
      .def("summary_csv", [](const PyTrace& t) { return summarize(t.trace); })
      .def("text", [](const PyTrace& t) { return trace_text(t.trace); })
      .def("digest", [](const PyTrace& t) { return trace_digest(t.trace); })
      .def("invariant_violations", [](const PyTrace& t) { return t.trace.invariant_violations; })
      .def("plot_frame_json", [](const PyTrace& t, int k) {
        const PlotFrame f = plot_frame(t.trace, k);
        auto items = [](const std::vector<PlotFrame::Item>& v) {
          json out = json::array();
          for (const auto& i : v) out.push_back({{"uas", i.uas_id}, {"status", i.status}, {"order", i.order}, {"segment", i.segment}});
          return out;
        };
        return dump({{"k", f.k}, {"allocated", items(f.allocated)}, {"traveled", items(f.traveled)}, {"positions", items(f.positions)}});
      });

  m.def(
      "simulate",
      [](const PyGraph& g, const std::string& scenario_json, int n_t, bool check_invariants) {
        const Scenario sc = parse_scenario(scenario_json);
        SimConfig cfg;
        cfg.supervisor.n_t = n_t;
        cfg.check_invariants = check_invariants;
        py::gil_scoped_release release;
        return PyTrace{run(g.graph, sc, cfg)};
      },
      py::arg("graph"), py::arg("scenario_json"), py::arg("n_t") = 50, py::arg("check_invariants") = false);

  m.def("verify_json", [](const PyGraph& g, const PyTrace& t) { return dump(verify_trace(g.graph, t.trace).to_json()); });

  m.def(
      "timing_scenario_json",
      [](const PyGraph& g, std::uint64_t seed, int horizon) {
        return dump(scenario_to_json(build_timing_scenario(g.graph, reference_timing_table(), seed, horizon)));
      },
      py::arg("graph"), py::arg("seed") = 7, py::arg("horizon") = 500);

  m.def(
      "random_scenario_json",
      [](std::uint64_t seed, int count, int horizon) { return dump(scenario_to_json(make_random_scenario(seed, count, horizon))); },
      py::arg("seed"), py::arg("count"), py::arg("horizon"));
}
