#include <doctest.h>

#include "skyroad/errors.hpp"
#include "skyroad/pipeline.hpp"
#include "support.hpp"

using namespace skyroad;

TEST_CASE("derived lengths follow the grid spacing") {
  const LandscapeSpec spec = testsupport::make_spec(100, 21, 1);
  const RunConfig r = RunConfig{}.resolved(spec);
  CHECK(*r.delta_min_m == 10.0);
  CHECK(*r.seg_length_m == 5.0);
  CHECK(*r.r_v_m == 7.5);

  RunConfig explicit_cfg;
  explicit_cfg.seg_length_m = 3.0;
  CHECK(*explicit_cfg.resolved(spec).seg_length_m == 3.0);

  RunConfig bad;
  bad.levels = 1;
  CHECK_THROWS_AS(bad.resolved(spec), ValidationError);
  bad = {};
  bad.n_t = 0;
  CHECK_THROWS_AS(bad.resolved(spec), ValidationError);
  bad = {};
  bad.r_v_m = -1.0;
  CHECK_THROWS_AS(bad.resolved(spec), ValidationError);
}

TEST_CASE("config overlay") {
  const auto doc = nlohmann::json::parse(R"({"skyroads": {"levels": 6, "r_v_m": 20}, "supervisor": {"n_t": 12}})");
  const RunConfig r = run_config_from_json(doc);
  CHECK(r.levels == 6);
  CHECK(*r.r_v_m == 20.0);
  CHECK(r.n_t == 12);
  CHECK_FALSE(r.seg_length_m);
  CHECK(r.solver.tolerance == 1e-6);
  CHECK(run_config_from_json(r.to_json()).to_json() == r.to_json());
  CHECK_THROWS_AS(run_config_from_json(nlohmann::json::array()), ParseError);
  CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse(R"({"skyroads": {"levels": "x"}})")), ParseError);
}

TEST_CASE("close stream values are reported") {
  LandscapeSpec spec = testsupport::make_spec(100, 21, 1);
  // Two obstacles on the same streamline.
  testsupport::add_obstacle(spec, "west", testsupport::rect(22, 47, 28, 53), 20);
  testsupport::add_obstacle(spec, "east", testsupport::rect(72, 47, 78, 53), 20);
  const FloorSlice slice = slice_floor(spec, 1);
  const BoundaryValues b = external_boundary_values(slice);
  const StreamField f = solve_laplace(slice, b, obstacle_levels(slice, b), {});
  const auto warnings = close_level_warnings(slice, f, 10);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("west") != std::string::npos);
}

TEST_CASE("reference network") {
  const Network net = generate_network(load_landscape(SKYROAD_DATA_DIR "/urban_91x91.json"), RunConfig{});
  CHECK(net.floors.size() == 8);
  CHECK(net.graph.node_count() == net.segments.size());
  CHECK(net.reachability.strongly_connected);
  CHECK(rule_violations(net.graph, *net.config.r_v_m).empty());
  CHECK(net.report().at("reachability").at("strongly_connected") == true);
}
