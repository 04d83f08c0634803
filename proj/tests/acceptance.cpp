// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "laplace_oracle.hpp"
#include "skyroad/pipeline.hpp"
#include "skyroad/planner.hpp"
#include "skyroad/sim.hpp"
#include "support.hpp"

using namespace skyroad;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  if (!out.pass) ++failures;
  std::printf("%s  %2d  %-28s %s\n", out.pass ? "PASS" : "FAIL", id, name, out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

const LandscapeSpec& landscape() {
  static const LandscapeSpec spec = load_landscape(SKYROAD_DATA_DIR "/urban_91x91.json");
  return spec;
}

const Network& network() {
  static const Network net = generate_network(landscape(), RunConfig{});
  return net;
}

// Random square instance with up to two obstacles kept at least two nodes
// apart, so each one forms its own keep-out zone.
LandscapeSpec random_instance(std::mt19937_64& rng, int& floor) {
  const int n = testsupport::uniform_int(rng, 7, 15);
  const double d = 10.0;
  LandscapeSpec s = testsupport::make_spec((n - 1) * d, n, 2);
  floor = testsupport::uniform_int(rng, 1, 2);
  const int count = testsupport::uniform_int(rng, 0, 2);
  const int mid = n / 2;
  for (int k = 0; k < count; ++k) {
    // First obstacle in columns [2, mid - 1], second in [mid + 1, n - 3].
    const int lo = k == 0 ? 2 : mid + 1;
    const int hi = k == 0 ? mid - 1 : n - 3;
    if (lo > hi) continue;
    const int i0 = testsupport::uniform_int(rng, lo, hi);
    const int i1 = testsupport::uniform_int(rng, i0, hi);
    const int j0 = testsupport::uniform_int(rng, 2, n - 3);
    const int j1 = testsupport::uniform_int(rng, j0, n - 3);
    testsupport::add_obstacle(s, "o" + std::to_string(k),
                              testsupport::rect((i0 - 0.5) * d, (j0 - 0.5) * d, (i1 + 0.5) * d, (j1 + 0.5) * d), 40);
  }
  return s;
}

Outcome laplace_correctness() {
  const LandscapeSpec& spec = landscape();
  double worst_residual = 0.0, slowest = 0.0;
  bool bounded = true;
  for (int h = 1; h <= spec.n_z; ++h) {
    const auto t0 = Clock::now();
    const FloorSlice slice = slice_floor(spec, h);
    const BoundaryValues b = external_boundary_values(slice);
    const StreamField f = solve_laplace(slice, b, obstacle_levels(slice, b), {});
    slowest = std::max(slowest, seconds_since(t0));
    worst_residual = std::max(worst_residual, residual(f));
    for (double v : f.psi) bounded = bounded && v >= spec.psi_min && v <= spec.psi_max;
  }
  return {worst_residual <= 1e-6 && bounded && slowest < 10.0,
          fmt("%d floors, max residual %.3g, psi within [%g, %g]: %s, slowest floor %.3f s", spec.n_z, worst_residual,
              spec.psi_min, spec.psi_max, bounded ? "yes" : "no", slowest)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  int obstacles = 0;
  for (int trial = 0; trial < 20; ++trial) {
    int floor = 1;
    const LandscapeSpec s = random_instance(rng, floor);
    obstacles += static_cast<int>(s.obstacles.size());
    const FloorSlice slice = slice_floor(s, floor);
    const BoundaryValues b = external_boundary_values(slice);
    SolverConfig cfg;
    cfg.tolerance = 1e-13;
    const StreamField f = solve_laplace(slice, b, obstacle_levels(slice, b), cfg);
    const auto oracle = testsupport::dense_laplace(s, floor);
    for (std::size_t c = 0; c < oracle.size(); ++c) worst = std::max(worst, std::abs(oracle[c] - f.psi[c]));
  }
  return {worst <= 1e-8, fmt("20 instances (%d obstacles), max |SOR - LU| = %.3g", obstacles, worst)};
}

Outcome condition_one() {
  const Network& net = network();
  std::size_t vertices = 0, in_cells = 0, in_footprints = 0;
  double depth = 0.0;  // how far the deepest such vertex sits inside a footprint
  for (const FloorResult& f : net.floors) {
    for (const Skyroad& r : f.skyroads) {
      for (const Vec2& p : r.polyline) {
        ++vertices;
        const auto [i, j] = f.slice.cell_of(p);
        in_cells += f.slice.keepout(i, j);
        for (const ObstaclePrism& o : landscape().obstacles) {
          if (o.height > f.slice.elevation && testsupport::inside(p, o.footprint)) {
            ++in_footprints;
            double edge = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0, b = o.footprint.size() - 1; a < o.footprint.size(); b = a++) {
              edge = std::min(edge, point_segment_distance(p, o.footprint[b], o.footprint[a]));
            }
            depth = std::max(depth, edge);
            break;
          }
        }
      }
    }
  }
  // The mask is the keep-out region at grid resolution; footprint hits are
  // reported but a sliver thinner than the grid spacing has no cell center.
  return {vertices > 0 && in_cells == 0,
          fmt("%zu vertices, %zu in keep-out cells (%zu within a footprint sliver, deepest %.2f m)", vertices,
              in_cells, in_footprints, depth)};
}

Outcome condition_two() {
  const Network& net = network();
  int floors = 0, roads = 0;
  double worst = 1.0;
  for (const FloorResult& f : net.floors) {
    if (!f.slice.zones.empty()) continue;
    ++floors;
    for (const Skyroad& r : f.skyroads) {
      Vec2 sum{0, 0};
      for (std::size_t k = 1; k < r.polyline.size(); ++k) {
        sum.x += r.polyline[k].x - r.polyline[k - 1].x;
        sum.y += r.polyline[k].y - r.polyline[k - 1].y;
      }
      const double norm = std::hypot(sum.x, sum.y);
      const double align = norm > 0 ? std::abs(sum.x * f.slice.n1.x + sum.y * f.slice.n1.y) / norm : 0.0;
      worst = std::min(worst, align);
      ++roads;
    }
  }
  return {floors > 0 && roads > 0 && worst >= 0.99,
          fmt("%d obstacle-free floors, %d skyroads, min |t.n1| = %.6f", floors, roads, worst)};
}

Outcome reachability() {
  const Network& net = network();
  const auto& edges = net.graph.edges();
  const std::size_t oracle = testsupport::kosaraju_components(net.graph.node_count(), {edges.begin(), edges.end()});
  const bool pass = net.reachability.strongly_connected && oracle == 1 && net.graph.node_count() > 0;
  return {pass, fmt("%zu segments, %zu edges, r_v %.2f m, Tarjan components %zu, Kosaraju components %zu",
                    net.graph.node_count(), net.graph.edge_count(), *net.config.r_v_m,
                    net.reachability.component_count, oracle)};
}

Outcome astar_optimality() {
  std::mt19937_64 rng(99);
  const auto t0 = Clock::now();
  int queries = 0, mismatches = 0, unreachable = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = testsupport::uniform_int(rng, 2, 200);
    const SkyroadGraph g = testsupport::random_graph(rng, n, testsupport::uniform_int(rng, n, 4 * n));
    std::vector<char> live(static_cast<std::size_t>(n), 1);
    for (int k = 0; k < n / 4; ++k) live[testsupport::uniform_int(rng, 0, n - 1)] = 0;
    for (int q = 0; q < 10; ++q) {
      const int s = testsupport::uniform_int(rng, 0, n - 1), t = testsupport::uniform_int(rng, 0, n - 1);
      if (!live[s] || !live[t]) continue;
      ++queries;
      const auto path = astar(LiveGraph{&g, live, {}}, {s, t, 0});
      const double expected = testsupport::dijkstra_cost(g, live, s, t);
      if (std::isinf(expected)) {
        ++unreachable;
        mismatches += path.has_value();
      } else if (!path || path->total_cost != expected) {
        ++mismatches;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  return {mismatches == 0 && elapsed < 5.0,
          fmt("100 graphs, %d queries (%d unreachable), %d mismatches, %.2f s", queries, unreachable, mismatches,
              elapsed)};
}

const Scenario& table_scenario() {
  static const Scenario sc = build_timing_scenario(network().graph, reference_timing_table(), 7, 500);
  return sc;
}

Outcome table_reproduction() {
  const auto t0 = Clock::now();
  const Scenario& sc = table_scenario();
  const SimTrace trace = run(network().graph, sc);
  const double elapsed = seconds_since(t0);
  int matched = 0;
  std::string first_miss;
  for (const TimingRow& row : reference_timing_table()) {
    const auto it = std::find_if(trace.uas.begin(), trace.uas.end(),
                                 [&](const UasSummary& u) { return u.uas_id == row.uas_id; });
    const bool ok = it != trace.uas.end() && it->allocated && it->t_request == row.t_request &&
                    it->t_max == row.t_max && it->t_check == row.t_check && it->t_check == it->t_request + it->t_max;
    if (ok) ++matched;
    else if (first_miss.empty()) first_miss = ", first mismatch UAS " + std::to_string(row.uas_id);
  }
  const auto total = static_cast<int>(reference_timing_table().size());
  return {matched == total && elapsed < 60.0,
          fmt("%d/%d rows exact over %d steps, %.2f s%s", matched, total, sc.horizon, elapsed, first_miss.c_str())};
}

Outcome safety() {
  const Network& net = network();
  int passed = 0, violations = 0;
  const SimTrace table = run(net.graph, table_scenario());
  const auto r0 = verify_trace(net.graph, table);
  passed += r0.passed;
  violations += static_cast<int>(r0.violations.size());
  int allocated = 0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const SimTrace t = run(net.graph, make_random_scenario(seed, 20, 500));
    const auto r = verify_trace(net.graph, t);
    passed += r.passed;
    violations += static_cast<int>(r.violations.size());
    for (const UasSummary& u : t.uas) allocated += u.allocated;
  }
  return {passed == 26, fmt("%d/26 traces verified (timing table + 25 random, %d of 500 UAS allocated), %d violations",
                            passed, allocated, violations)};
}

// Drives the supervisor step by step and checks the partition, the induced
// live edge set and conservation of reserved segments after every step.
int supervisor_audit(const SkyroadGraph& g, const Scenario& sc, EndpointChooser chooser, int& steps) {
  Supervisor sup(g);
  sup.set_endpoint_chooser(std::move(chooser));
  std::vector<ScenarioRequest> requests = sc.requests;
  std::stable_sort(requests.begin(), requests.end(),
                   [](const ScenarioRequest& a, const ScenarioRequest& b) { return a.submit_time < b.submit_time; });
  int bad = 0;
  std::size_t next = 0;
  const std::size_t n = g.node_count();
  for (int k = 0; k < sc.horizon; ++k) {
    std::vector<RequestEvent> arrivals;
    for (; next < requests.size() && requests[next].submit_time == k; ++next) {
      arrivals.push_back({requests[next].uas_id, requests[next].start, requests[next].goal, k});
    }
    sup.step(arrivals);
    ++steps;
    std::vector<char> held(n, 0);
    for (const Reservation& r : sup.reservations()) {
      if (r.retired) continue;
      for (int p = r.released_upto; p < r.path.hop_count; ++p) held[r.path.segment_ids[p]] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto id = static_cast<SegmentId>(i);
      const bool w = sup.in_w(id), wbar = sup.in_wbar(id);
      if (w && wbar) ++bad;                      // W and W_bar overlap
      if (sup.in_v(id) && !w && !wbar) ++bad;    // W and W_bar do not cover V
      if (sup.in_v(id) && wbar != (held[i] != 0)) ++bad;
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const Edge& edge = g.edge(e);
      if (sup.in_x(e) != (sup.in_e(e) && sup.in_w(edge.from) && sup.in_w(edge.to))) ++bad;
    }
  }
  return bad;
}

Outcome supervisor_invariants() {
  const Network& net = network();
  int steps = 0;
  int bad = supervisor_audit(net.graph, table_scenario(), {}, steps);
  const Scenario random = make_random_scenario(4, 20, 500);
  bad += supervisor_audit(net.graph, random, random_endpoint_chooser(random.seed), steps);
  return {bad == 0 && steps == 1000, fmt("%d steps audited (timing table + random), %d violations", steps, bad)};
}

Outcome determinism() {
  const Network& net = network();
  const Scenario random = make_random_scenario(17, 20, 500);
  const std::string a = trace_digest(run(net.graph, random));
  const std::string b = trace_digest(run(net.graph, random));
  const std::string c = trace_digest(run(net.graph, table_scenario()));
  const std::string d = trace_digest(run(net.graph, table_scenario()));
  const Network again = generate_network(landscape(), RunConfig{});
  const bool graph_same = graph_digest(again.graph) == graph_digest(net.graph);
  return {a == b && c == d && graph_same,
          fmt("random %s, timing table %s, regenerated graph %s (%.12s...)", a == b ? "identical" : "differ",
              c == d ? "identical" : "differ", graph_same ? "identical" : "differs", a.c_str())};
}

}  // namespace

int main() {
  report(1, "Laplace correctness", laplace_correctness);
  report(2, "Oracle equivalence", oracle_equivalence);
  report(3, "Condition 1 (keep-out)", condition_one);
  report(4, "Condition 2 (alignment)", condition_two);
  report(5, "Reachability", reachability);
  report(6, "A* optimality", astar_optimality);
  report(7, "Timing table reproduction", table_reproduction);
  report(8, "Safety", safety);
  report(9, "Supervisor invariants", supervisor_invariants);
  report(10, "Determinism", determinism);
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
