#include "skyroad/sim.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <queue>
#include <set>
#include <sstream>

#include "skyroad/digest.hpp"
#include "skyroad/errors.hpp"

namespace skyroad {

using nlohmann::json;

void validate_scenario(const Scenario& scenario) {
  if (scenario.horizon < 0) throw ScenarioError("horizon must be non-negative");
  std::set<int> ids;
  for (const ScenarioRequest& r : scenario.requests) {
    const std::string who = "request for UAS " + std::to_string(r.uas_id);
    if (!ids.insert(r.uas_id).second) throw ScenarioError("duplicate UAS id " + std::to_string(r.uas_id));
    if (r.submit_time < 0 || r.submit_time >= scenario.horizon) {
      throw ScenarioError(who + ": submit time " + std::to_string(r.submit_time) + " outside [0, horizon)");
    }
    if (!scenario.random_endpoints && (!r.start || !r.goal)) {
      throw ScenarioError(who + " has no endpoints and random_endpoints is false");
    }
  }
  for (const ScheduledAnomaly& a : scenario.anomalies) {
    if (a.step < 0 || a.step >= scenario.horizon) {
      throw ScenarioError("anomaly step " + std::to_string(a.step) + " outside [0, horizon)");
    }
  }
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  Scenario s;
  try {
    s.seed = doc.value("seed", std::uint64_t{0});
    s.horizon = doc.at("horizon").get<int>();
    s.random_endpoints = doc.value("random_endpoints", false);
    for (const json& r : doc.at("requests")) {
      ScenarioRequest req;
      req.uas_id = r.at("id").get<int>();
      req.submit_time = r.at("t").get<int>();
      if (r.contains("start") && !r.at("start").is_null()) req.start = r.at("start").get<SegmentId>();
      if (r.contains("goal") && !r.at("goal").is_null()) req.goal = r.at("goal").get<SegmentId>();
      s.requests.push_back(req);
    }
    if (doc.contains("anomalies")) {
      for (const json& a : doc.at("anomalies")) {
        ScheduledAnomaly sa;
        sa.step = a.at("t").get<int>();
        sa.anomaly.nodes = a.value("nodes", std::vector<SegmentId>{});
        for (const auto& e : a.value("edges", std::vector<std::vector<SegmentId>>{})) {
          if (e.size() != 2) throw ParseError("anomaly edge must be [from, to]");
          sa.anomaly.edges.push_back({e[0], e[1]});
        }
        s.anomalies.push_back(std::move(sa));
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed scenario: ") + e.what());
  }
  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

json scenario_to_json(const Scenario& scenario) {
  json requests = json::array();
  for (const ScenarioRequest& r : scenario.requests) {
    json item = {{"id", r.uas_id}, {"t", r.submit_time}};
    if (r.start) item["start"] = *r.start;
    if (r.goal) item["goal"] = *r.goal;
    requests.push_back(std::move(item));
  }
  json doc = {{"seed", scenario.seed},
              {"horizon", scenario.horizon},
              {"random_endpoints", scenario.random_endpoints},
              {"requests", std::move(requests)}};
  if (!scenario.anomalies.empty()) {
    json anomalies = json::array();
    for (const ScheduledAnomaly& a : scenario.anomalies) {
      json edges = json::array();
      for (const Edge& e : a.anomaly.edges) edges.push_back({e.from, e.to});
      anomalies.push_back({{"t", a.step}, {"nodes", a.anomaly.nodes}, {"edges", std::move(edges)}});
    }
    doc["anomalies"] = std::move(anomalies);
  }
  return doc;
}

std::string scenario_digest(const Scenario& scenario) { return sha256_hex(scenario_to_json(scenario).dump()); }

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw ValidationError("uniform_index over an empty range");
  // 2^64 mod n: values below it would bias the modulo.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

EndpointChooser random_endpoint_chooser(std::uint64_t seed, int retries) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng, retries](const Supervisor& sup, int) -> std::optional<std::pair<SegmentId, SegmentId>> {
    const std::vector<SegmentId> w = sup.accessible();
    if (w.size() < 2) return std::nullopt;
    for (int attempt = 0; attempt < retries; ++attempt) {
      const SegmentId a = w[uniform_index(*rng, w.size())];
      const SegmentId b = w[uniform_index(*rng, w.size())];
      if (a == b) continue;
      if (astar(sup.live(), {a, b, sup.time()})) return std::pair{a, b};
    }
    return std::nullopt;
  };
}

namespace {

std::string status_name(ReservationStatus status) {
  switch (status) {
    case ReservationStatus::active: return "active";
    case ReservationStatus::arrived: return "arrived";
    case ReservationStatus::disrupted: return "disrupted";
  }
  return "active";
}

}  // namespace

SimTrace run(const SkyroadGraph& graph, const Scenario& scenario, const SimConfig& config, EndpointChooser chooser) {
  validate_scenario(scenario);
  for (const ScenarioRequest& r : scenario.requests) {
    for (const auto& endpoint : {r.start, r.goal}) {
      if (endpoint && !graph.contains(*endpoint)) {
        throw ScenarioError("UAS " + std::to_string(r.uas_id) + " references nonexistent segment " +
                            std::to_string(*endpoint));
      }
    }
  }

  Supervisor sup(graph, config.supervisor);
  sup.set_endpoint_chooser(chooser ? std::move(chooser) : random_endpoint_chooser(scenario.seed));

  std::vector<ScenarioRequest> requests = scenario.requests;
  std::stable_sort(requests.begin(), requests.end(),
                   [](const ScenarioRequest& a, const ScenarioRequest& b) { return a.submit_time < b.submit_time; });
  std::map<int, Anomaly> anomalies;
  for (const ScheduledAnomaly& a : scenario.anomalies) {
    Anomaly& merged = anomalies[a.step];
    merged.nodes.insert(merged.nodes.end(), a.anomaly.nodes.begin(), a.anomaly.nodes.end());
    merged.edges.insert(merged.edges.end(), a.anomaly.edges.begin(), a.anomaly.edges.end());
  }

  SimTrace trace;
  trace.header = {{"graph_digest", graph_digest(graph)},
                  {"scenario_digest", scenario_digest(scenario)},
                  {"config", {{"n_t", config.supervisor.n_t}}},
                  {"horizon", scenario.horizon},
                  {"seed", scenario.seed}};
  std::size_t next = 0;
  for (int k = 0; k < scenario.horizon; ++k) {
    std::vector<RequestEvent> arrivals;
    for (; next < requests.size() && requests[next].submit_time == k; ++next) {
      const ScenarioRequest& r = requests[next];
      arrivals.push_back({r.uas_id, r.start, r.goal, r.submit_time});
    }
    const auto anomaly = anomalies.find(k);
    trace.steps.push_back(sup.step(arrivals, anomaly == anomalies.end() ? nullptr : &anomaly->second));
    if (config.check_invariants) {
      for (const std::string& v : sup.check_invariants()) trace.invariant_violations.push_back(std::to_string(k) + ": " + v);
    }
  }
  sup.request_stop();

  std::set<int> allocated;
  for (const Reservation& r : sup.reservations()) {
    UasSummary s;
    s.uas_id = r.uas_id;
    s.t_request = r.t_request;
    s.allocated = true;
    s.t_alloc = r.t_alloc;
    s.t_max = r.t_max;
    s.t_check = r.t_due;
    s.arrived = r.status == ReservationStatus::arrived && r.t_arrive <= scenario.horizon;
    s.t_arrive = s.arrived ? r.t_arrive : -1;
    s.status = s.arrived || r.status != ReservationStatus::arrived ? status_name(r.status) : "active";
    s.path = r.path.segment_ids;
    trace.uas.push_back(std::move(s));
    allocated.insert(r.uas_id);
  }
  for (const ScenarioRequest& r : requests) {
    if (allocated.count(r.uas_id)) continue;
    UasSummary s;
    s.uas_id = r.uas_id;
    s.t_request = r.submit_time;
    s.status = "pending";
    trace.uas.push_back(std::move(s));
  }
  return trace;
}

json VerificationReport::to_json() const {
  json items = json::array();
  for (const Violation& v : violations) {
    items.push_back({{"check", v.check}, {"step", v.step}, {"uas", v.uas_id}, {"detail", v.detail}});
  }
  return {{"passed", passed}, {"violation_count", violations.size()}, {"violations", std::move(items)}};
}

VerificationReport verify_trace(const SkyroadGraph& graph, const SimTrace& trace) {
  VerificationReport report;
  auto fail = [&](std::string check, int step, int uas, std::string detail) {
    report.violations.push_back({std::move(check), step, uas, std::move(detail)});
  };

  // Occupancy and per-UAS timelines.
  std::map<int, std::vector<std::pair<int, SegmentId>>> timeline;
  for (const StepRecord& rec : trace.steps) {
    std::map<SegmentId, int> occupant;
    for (const auto& [uas, seg] : rec.positions) {
      if (!graph.contains(seg)) {
        fail("motion", rec.k, uas, "segment " + std::to_string(seg) + " is not in V");
        continue;
      }
      const auto [it, inserted] = occupant.emplace(seg, uas);
      if (!inserted) {
        fail("exclusive_occupancy", rec.k, uas,
             "segment " + std::to_string(seg) + " shared with UAS " + std::to_string(it->second));
      }
      timeline[uas].push_back({rec.k, seg});
    }
  }

  auto check_move = [&](int step, int uas, SegmentId a, SegmentId b) {
    if (!graph.contains(a) || !graph.contains(b)) return;
    if (!graph.has_edge(a, b)) {
      fail("motion", step, uas, "(" + std::to_string(a) + ", " + std::to_string(b) + ") is not an edge of E");
      return;
    }
    const Segment& sa = graph.segment(a);
    const Segment& sb = graph.segment(b);
    if (sa.floor_index == sb.floor_index &&
        (sa.skyroad_index != sb.skyroad_index || sb.arc_index <= sa.arc_index)) {
      fail("direction", step, uas, "(" + std::to_string(a) + ", " + std::to_string(b) + ") runs against the skyroad");
    }
  };

  std::map<int, const UasSummary*> summary;
  for (const UasSummary& s : trace.uas) summary[s.uas_id] = &s;

  for (const auto& [uas, points] : timeline) {
    const auto found = summary.find(uas);
    const UasSummary* s = found == summary.end() ? nullptr : found->second;
    if (s == nullptr || !s->allocated) {
      fail("reserved_path", points.front().first, uas, "UAS moves without an allocation");
      continue;
    }
    for (std::size_t n = 0; n < points.size(); ++n) {
      const auto [k, seg] = points[n];
      const long index = static_cast<long>(k) - s->t_alloc;
      if (index < 0 || index >= static_cast<long>(s->path.size()) || s->path[static_cast<std::size_t>(index)] != seg) {
        fail("reserved_path", k, uas, "segment " + std::to_string(seg) + " is not path[" + std::to_string(index) + "]");
      }
      if (n == 0) continue;
      const auto [k_prev, seg_prev] = points[n - 1];
      if (k != k_prev + 1) {
        fail("unit_speed", k, uas, "not observed at step " + std::to_string(k_prev + 1));
        continue;
      }
      if (seg == seg_prev) {
        fail("unit_speed", k, uas, "held segment " + std::to_string(seg));
        continue;
      }
      check_move(k, uas, seg_prev, seg);
    }
  }

  std::optional<int> pending_since;
  int last_request = std::numeric_limits<int>::min();
  for (const UasSummary& s : trace.uas) {
    if (!s.allocated) {
      if (!pending_since || s.t_request < *pending_since) pending_since = s.t_request;
      continue;
    }
    if (s.t_request < last_request) {
      fail("fcfs", s.t_alloc, s.uas_id, "allocated after a later request");
    }
    last_request = std::max(last_request, s.t_request);
    if (s.t_alloc < s.t_request) fail("fcfs", s.t_alloc, s.uas_id, "allocated before submission");
    if (s.t_check != s.t_alloc + s.t_max) fail("timing", s.t_alloc, s.uas_id, "t_check != t_alloc + t_max");
    for (std::size_t n = 1; n < s.path.size(); ++n) check_move(s.t_alloc, s.uas_id, s.path[n - 1], s.path[n]);
    if (s.arrived) {
      if (s.t_arrive > s.t_check) {
        fail("arrival", s.t_arrive, s.uas_id,
             "arrived at " + std::to_string(s.t_arrive) + " after t_check " + std::to_string(s.t_check));
      }
      const int expected = s.t_alloc + std::max<int>(1, static_cast<int>(s.path.size()) - 1);
      if (s.t_arrive != expected) fail("unit_speed", s.t_arrive, s.uas_id, "arrival time inconsistent with path length");
    }
  }
  if (pending_since) {
    for (const UasSummary& s : trace.uas) {
      if (s.allocated && s.t_request > *pending_since) {
        fail("fcfs", s.t_alloc, s.uas_id, "allocated while an earlier request is still pending");
      }
    }
  }
  report.passed = report.violations.empty();
  return report;
}

std::string summarize(const SimTrace& trace) {
  std::vector<const UasSummary*> rows;
  for (const UasSummary& s : trace.uas) rows.push_back(&s);
  std::stable_sort(rows.begin(), rows.end(), [](const UasSummary* a, const UasSummary* b) {
    if (a->t_request != b->t_request) return a->t_request < b->t_request;
    return a->uas_id < b->uas_id;
  });
  std::string out = "uas,t_request,t_max,t_check,arrived\n";
  for (const UasSummary* s : rows) {
    out += std::to_string(s->uas_id) + "," + std::to_string(s->t_request) + ",";
    if (s->allocated) out += std::to_string(s->t_max) + "," + std::to_string(s->t_check);
    else out += ",";
    out += s->arrived ? ",true\n" : ",false\n";
  }
  return out;
}

namespace {

EventType event_type_from(const std::string& name) {
  for (EventType t : {EventType::request, EventType::allocate, EventType::defer, EventType::clear, EventType::check,
                      EventType::anomaly, EventType::arrive, EventType::disrupt, EventType::overdue}) {
    if (to_string(t) == name) return t;
  }
  throw ParseError("unknown trace event type '" + name + "'");
}

}  // namespace

void write_trace(const SimTrace& trace, std::ostream& out) {
  json header = trace.header;
  header["type"] = "header";
  out << header.dump() << '\n';
  for (const StepRecord& rec : trace.steps) {
    json events = json::array();
    for (const SupervisorEvent& e : rec.events) {
      events.push_back({{"type", to_string(e.type)}, {"uas", e.uas_id}, {"data", e.payload}});
    }
    json positions = json::array();
    for (const auto& [uas, seg] : rec.positions) positions.push_back({uas, seg});
    out << json{{"type", "step"},
                {"k", rec.k},
                {"positions", std::move(positions)},
                {"w", rec.w_size},
                {"wbar", rec.wbar_size},
                {"events", std::move(events)}}
               .dump()
        << '\n';
  }
  for (const UasSummary& s : trace.uas) {
    out << json{{"type", "uas"},         {"uas", s.uas_id},       {"t_request", s.t_request},
                {"allocated", s.allocated}, {"t_alloc", s.t_alloc}, {"t_max", s.t_max},
                {"t_check", s.t_check},   {"arrived", s.arrived},  {"t_arrive", s.t_arrive},
                {"status", s.status},     {"path", s.path}}
               .dump()
        << '\n';
  }
  if (!trace.invariant_violations.empty()) {
    out << json{{"type", "invariants"}, {"violations", trace.invariant_violations}}.dump() << '\n';
  }
}

std::string trace_text(const SimTrace& trace) {
  std::ostringstream out;
  write_trace(trace, out);
  return out.str();
}

SimTrace read_trace(std::istream& in) {
  SimTrace trace;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      json doc = json::parse(line);
      const std::string type = doc.at("type").get<std::string>();
      if (type == "header") {
        doc.erase("type");
        trace.header = std::move(doc);
        have_header = true;
      } else if (type == "step") {
        StepRecord rec;
        rec.k = doc.at("k").get<int>();
        for (const auto& p : doc.at("positions")) rec.positions.push_back({p.at(0).get<int>(), p.at(1).get<SegmentId>()});
        rec.w_size = doc.at("w").get<std::size_t>();
        rec.wbar_size = doc.at("wbar").get<std::size_t>();
        for (const auto& e : doc.at("events")) {
          rec.events.push_back({event_type_from(e.at("type").get<std::string>()), e.at("uas").get<int>(), e.at("data")});
        }
        trace.steps.push_back(std::move(rec));
      } else if (type == "uas") {
        UasSummary s;
        s.uas_id = doc.at("uas").get<int>();
        s.t_request = doc.at("t_request").get<int>();
        s.allocated = doc.at("allocated").get<bool>();
        s.t_alloc = doc.at("t_alloc").get<int>();
        s.t_max = doc.at("t_max").get<int>();
        s.t_check = doc.at("t_check").get<int>();
        s.arrived = doc.at("arrived").get<bool>();
        s.t_arrive = doc.at("t_arrive").get<int>();
        s.status = doc.at("status").get<std::string>();
        s.path = doc.at("path").get<std::vector<SegmentId>>();
        trace.uas.push_back(std::move(s));
      } else if (type == "invariants") {
        trace.invariant_violations = doc.at("violations").get<std::vector<std::string>>();
      } else {
        throw ParseError("unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw ParseError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw ParseError("trace has no header line");
  return trace;
}

std::string trace_digest(const SimTrace& trace) { return sha256_hex(trace_text(trace)); }

const std::vector<TimingRow>& reference_timing_table() {
  static const std::vector<TimingRow> rows = {
      {1, 8, 37, 45},      {2, 26, 49, 75},     {3, 31, 101, 132},   {4, 52, 75, 127},    {5, 82, 68, 150},
      {6, 97, 17, 114},    {7, 145, 51, 196},   {8, 165, 111, 276},  {9, 182, 135, 317},  {10, 200, 86, 286},
      {11, 208, 47, 255},  {12, 213, 103, 316}, {13, 238, 138, 376}, {14, 263, 75, 338},  {15, 311, 81, 392},
      {16, 326, 44, 370},  {17, 355, 48, 403},  {18, 445, 1, 446},   {19, 461, 57, 518},  {20, 484, 38, 522},
  };
  return rows;
}

namespace {

// Hop counts along the shortest-path tree from `source` over the live graph.
std::vector<int> shortest_path_hops(const LiveGraph& live, SegmentId source) {
  const SkyroadGraph& graph = *live.graph;
  const std::size_t n = graph.node_count();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> hops(n, -1);
  using Item = std::pair<double, SegmentId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[source] = 0.0;
  hops[source] = 1;
  open.push({0.0, source});
  while (!open.empty()) {
    const auto [d, v] = open.top();
    open.pop();
    if (d != dist[v]) continue;
    for (std::uint32_t e : graph.out_edges(v)) {
      if (!live.edge_ok(e)) continue;
      const SegmentId w = graph.edge(e).to;
      if (!live.node_ok(w)) continue;
      const double nd = d + distance(graph.segment(v).midpoint, graph.segment(w).midpoint);
      if (nd < dist[w]) {
        dist[w] = nd;
        hops[w] = hops[v] + 1;
        open.push({nd, w});
      }
    }
  }
  return hops;
}

}  // namespace

Scenario build_timing_scenario(const SkyroadGraph& graph, const std::vector<TimingRow>& rows, std::uint64_t seed,
                               int horizon, const SimConfig& config) {
  Scenario probe;
  probe.seed = seed;
  probe.horizon = horizon;
  probe.random_endpoints = true;
  std::map<int, int> target_hops;
  for (const TimingRow& row : rows) {
    if (row.t_check != row.t_request + row.t_max) {
      throw ScenarioError("row for UAS " + std::to_string(row.uas_id) + " has t_check != t_request + t_max");
    }
    if (row.t_max < 1) throw ScenarioError("row for UAS " + std::to_string(row.uas_id) + " has t_max < 1");
    probe.requests.push_back({row.uas_id, row.t_request, std::nullopt, std::nullopt});
    target_hops[row.uas_id] = row.t_max + 1;
  }

  auto rng = std::make_shared<std::mt19937_64>(seed);
  EndpointChooser chooser = [rng, target_hops](const Supervisor& sup,
                                               int uas) -> std::optional<std::pair<SegmentId, SegmentId>> {
    const int target = target_hops.at(uas);
    const std::vector<SegmentId> w = sup.accessible();
    if (w.empty()) return std::nullopt;
    const LiveGraph live = sup.live();
    for (int attempt = 0; attempt < 400; ++attempt) {
      const SegmentId start = w[uniform_index(*rng, w.size())];
      const std::vector<int> hops = shortest_path_hops(live, start);
      std::vector<SegmentId> candidates;
      for (std::size_t v = 0; v < hops.size(); ++v) {
        if (hops[v] == target) candidates.push_back(static_cast<SegmentId>(v));
      }
      for (int tries = 0; tries < 8 && !candidates.empty(); ++tries) {
        const std::size_t pick = uniform_index(*rng, candidates.size());
        const SegmentId goal = candidates[pick];
        const auto path = astar(live, {start, goal, sup.time()});
        if (path && path->hop_count == target) return std::pair{start, goal};
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
      }
    }
    return std::nullopt;
  };

  const SimTrace trace = run(graph, probe, config, chooser);
  std::map<int, const UasSummary*> by_id;
  for (const UasSummary& s : trace.uas) by_id[s.uas_id] = &s;

  Scenario out;
  out.seed = seed;
  out.horizon = horizon;
  out.random_endpoints = false;
  for (const TimingRow& row : rows) {
    const UasSummary* s = by_id.at(row.uas_id);
    if (!s->allocated || s->t_alloc != row.t_request || s->t_max != row.t_max) {
      throw ScenarioError("no endpoints reproduce the timing of UAS " + std::to_string(row.uas_id));
    }
    out.requests.push_back({row.uas_id, row.t_request, s->path.front(), s->path.back()});
  }
  return out;
}

Scenario make_random_scenario(std::uint64_t seed, int count, int horizon) {
  if (count < 0) throw ScenarioError("UAS count must be non-negative");
  if (horizon <= 0 && count > 0) throw ScenarioError("horizon must be positive");
  std::mt19937_64 rng(seed);
  std::vector<int> times;
  for (int n = 0; n < count; ++n) times.push_back(static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(horizon))));
  std::sort(times.begin(), times.end());
  Scenario s;
  s.seed = seed;
  s.horizon = horizon;
  s.random_endpoints = true;
  for (int n = 0; n < count; ++n) s.requests.push_back({n + 1, times[static_cast<std::size_t>(n)], std::nullopt, std::nullopt});
  return s;
}

PlotFrame plot_frame(const SimTrace& trace, int k) {
  if (k < 0 || k >= static_cast<int>(trace.steps.size())) {
    throw RangeError("step " + std::to_string(k) + " outside the recorded horizon [0, " +
                     std::to_string(trace.steps.size()) + ")");
  }
  // Last recorded path index per UAS up to step k.
  std::map<int, int> last_index;
  std::map<int, int> disrupted_at;
  std::map<int, int> t_alloc;
  for (const UasSummary& s : trace.uas) {
    if (s.allocated) t_alloc[s.uas_id] = s.t_alloc;
  }
  for (int step = 0; step <= k; ++step) {
    const StepRecord& rec = trace.steps[static_cast<std::size_t>(step)];
    for (const auto& [uas, seg] : rec.positions) last_index[uas] = step - t_alloc.at(uas);
    for (const SupervisorEvent& e : rec.events) {
      if (e.type == EventType::disrupt) disrupted_at.emplace(e.uas_id, step);
    }
  }

  PlotFrame frame;
  frame.k = k;
  for (const UasSummary& s : trace.uas) {
    if (!s.allocated || s.t_alloc > k) continue;
    std::string status = "en_route";
    int traveled = last_index.count(s.uas_id) ? last_index[s.uas_id] : 0;
    if (s.arrived && s.t_arrive <= k) {
      status = "arrived";
      traveled = static_cast<int>(s.path.size()) - 1;
    } else if (disrupted_at.count(s.uas_id)) {
      status = "disrupted";
    }
    for (std::size_t n = 0; n < s.path.size(); ++n) {
      frame.allocated.push_back({s.uas_id, status, static_cast<int>(n), s.path[n]});
      if (static_cast<int>(n) <= traveled) frame.traveled.push_back({s.uas_id, status, static_cast<int>(n), s.path[n]});
    }
  }
  for (const auto& [uas, seg] : trace.steps[static_cast<std::size_t>(k)].positions) {
    frame.positions.push_back({uas, "en_route", std::max(0, k - t_alloc.at(uas)), seg});
  }
  return frame;
}

}  // namespace skyroad
