#include <doctest.h>

#include <sstream>

#include "laplace_oracle.hpp"
#include "skyroad/errors.hpp"
#include "skyroad/streamfield.hpp"
#include "support.hpp"

using namespace skyroad;
using testsupport::rect;

namespace {

StreamField solve(const LandscapeSpec& s, int h, SolverConfig cfg = {}) {
  const FloorSlice f = slice_floor(s, h);
  const BoundaryValues b = external_boundary_values(f);
  return solve_laplace(f, b, obstacle_levels(f, b), cfg);
}

}  // namespace

TEST_CASE("external boundary interpolants") {
  const LandscapeSpec s = testsupport::make_spec(100, 11, 2);
  for (int h : {1, 2}) {
    const FloorSlice f = slice_floor(s, h);
    const BoundaryValues b = external_boundary_values(f);
    CHECK(b.inflow(f.r_a) == 0.0);
    CHECK(b.inflow(f.r_b) == 1.0);
    CHECK(b.inflow((f.r_a + f.r_b) * 0.5) == doctest::Approx(0.5));
    CHECK(b.outflow(f.r_c) == 0.0);
    CHECK(b.outflow(f.r_d) == 1.0);
    // Every boundary node carries the undisturbed linear value, so the
    // corners are continuous.
    for (int j = 0; j < f.n_y; ++j) {
      for (int i = 0; i < f.n_x; ++i) {
        if (!f.on_boundary(i, j)) {
          CHECK(std::isnan(b.at(i, j)));
          continue;
        }
        const Vec2 p = f.node(i, j);
        const double expected = h == 1 ? p.y / 100.0 : (100.0 - p.x) / 100.0;
        CHECK(b.at(i, j) == doctest::Approx(expected).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("degenerate boundary anchors") {
  BoundaryValues b;
  b.n1 = {1, 0};
  b.n2 = {0, 1};
  b.r_a = b.r_b = {0, 0};
  b.r_c = {10, 0};
  b.r_d = {10, 10};
  CHECK_THROWS_AS(b.inflow({0, 0}), DegenerateBoundaryError);
  CHECK_NOTHROW(b.outflow({10, 5}));
}

TEST_CASE("obstacle stream levels") {
  LandscapeSpec s = testsupport::make_spec(100, 21, 2);
  testsupport::add_obstacle(s, "quarter", rect(40.5, 20.5, 60.5, 30.5), 30);  // centroid y = 25.5
  testsupport::add_obstacle(s, "same_a", rect(10.5, 60.5, 20.5, 70.5), 30);
  testsupport::add_obstacle(s, "same_b", rect(70.5, 62.5, 80.5, 68.5), 30);  // same centroid y = 65.5
  testsupport::add_obstacle(s, "low", rect(30.5, 80.5, 40.5, 90.5), 5);
  const FloorSlice f = slice_floor(s, 1);
  const BoundaryValues b = external_boundary_values(f);
  CHECK(obstacle_level(f, "quarter", b) == doctest::Approx(0.255).epsilon(1e-12));
  CHECK(obstacle_level(f, "same_a", b) == obstacle_level(f, "same_b", b));
  CHECK(obstacle_level(f, "same_a", b) == doctest::Approx(0.655).epsilon(1e-12));
  CHECK_THROWS_AS(obstacle_level(f, "low", b), ObstacleNotOnFloorError);
  CHECK_THROWS_AS(obstacle_level(f, "missing", b), ObstacleNotOnFloorError);

  // Even floor: psi measured from x = X toward x = 0.
  const FloorSlice f2 = slice_floor(s, 2);
  const BoundaryValues b2 = external_boundary_values(f2);
  CHECK(obstacle_level(f2, "quarter", b2) == doctest::Approx((100 - 50.5) / 100.0).epsilon(1e-12));

}

TEST_CASE("empty floor gives the exact linear field") {
  const LandscapeSpec s = testsupport::make_spec(90, 19, 2);
  for (int h : {1, 2}) {
    const StreamField f = solve(s, h);
    CHECK(f.residual <= 1e-10);
    CHECK(residual(f) <= 1e-12);
    for (int j = 0; j < f.n_y; ++j) {
      for (int i = 0; i < f.n_x; ++i) {
        const double expected = h == 1 ? j / 18.0 : (18 - i) / 18.0;
        CHECK(f.at(i, j) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("9x9 grid with a centered 3x3 obstacle matches the dense solve") {
  LandscapeSpec s = testsupport::make_spec(80, 9, 1);
  testsupport::add_obstacle(s, "c", rect(25, 25, 55, 55), 30);  // nodes 3..5
  const FloorSlice f = slice_floor(s, 1);
  CHECK(std::count(f.keepout_mask.begin(), f.keepout_mask.end(), 1) == 9);
  SolverConfig cfg;
  cfg.tolerance = 1e-13;
  const StreamField field = solve(s, 1, cfg);
  CHECK(field.zone_levels.at(0) == doctest::Approx(0.5));
  const auto oracle = testsupport::dense_laplace(s, 1);
  for (std::size_t c = 0; c < oracle.size(); ++c) CHECK(field.psi[c] == doctest::Approx(oracle[c]).epsilon(1e-10));
}

TEST_CASE("residual examples") {
  StreamField f;
  f.n_x = f.n_y = 5;
  f.psi_min = 0;
  f.psi_max = 1;
  f.psi.assign(25, 0.3);
  f.dirichlet.assign(25, 0);
  CHECK(residual(f) == 0.0);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i) f.psi[j * 5 + i] = 0.1 * i + 0.05 * j;
  CHECK(residual(f) <= 1e-12);
  f.psi[12] += 0.01;
  CHECK(residual(f) == doctest::Approx(0.04));
}

TEST_CASE("solver configuration and non-convergence") {
  SolverConfig bad;
  bad.relaxation_omega = 2.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = {};
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  LandscapeSpec s = testsupport::make_spec(100, 21, 1);
  testsupport::add_obstacle(s, "o", rect(30.5, 30.5, 50.5, 40.5), 30);
  SolverConfig cfg;
  cfg.max_iterations = 1;
  cfg.tolerance = 1e-12;
  CHECK_THROWS_AS(solve(s, 1, cfg), NonConvergenceError);
}

TEST_CASE("maximum principle, monotone empty floors and constant keep-out values (property)") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = testsupport::uniform_int(rng, 9, 31);
    LandscapeSpec s = testsupport::make_spec(300, n, 2);
    const int count = testsupport::uniform_int(rng, 0, 3);
    for (int k = 0; k < count; ++k) {
      const double x = testsupport::uniform(rng, 30, 220), y = testsupport::uniform(rng, 30, 220);
      testsupport::add_obstacle(s, "o" + std::to_string(k),
                                rect(x, y, x + testsupport::uniform(rng, 10, 50), y + testsupport::uniform(rng, 10, 50)),
                                testsupport::uniform(rng, 5, 20));
    }
    for (int h = 1; h <= 2; ++h) {
      const FloorSlice fl = slice_floor(s, h);
      const StreamField f = solve(s, h);
      CHECK(f.converged());
      for (double v : f.psi) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
      for (std::size_t c = 0; c < f.psi.size(); ++c) {
        if (fl.keepout_mask[c]) CHECK(f.psi[c] == f.zone_levels[fl.zone_of_cell[c]]);
      }
      if (fl.zones.empty()) {
        // Strictly increasing along n2 on every line.
        for (int a = 0; a < n; ++a) {
          for (int b = 1; b < n; ++b) {
            const double prev = h == 1 ? f.at(a, b - 1) : f.at(n - b, a);
            const double next = h == 1 ? f.at(a, b) : f.at(n - 1 - b, a);
            CHECK(next > prev);
          }
        }
      }
    }
  }
}

TEST_CASE("symmetric obstacle gives an antisymmetric field") {
  LandscapeSpec s = testsupport::make_spec(200, 41, 1);
  testsupport::add_obstacle(s, "mid", rect(72.5, 77.5, 127.5, 122.5), 30);  // symmetric about y = 100
  SolverConfig cfg;
  cfg.tolerance = 1e-13;
  const StreamField f = solve(s, 1, cfg);
  CHECK(f.zone_levels.at(0) == doctest::Approx(0.5).epsilon(1e-14));
  for (int j = 0; j < 41; ++j) {
    for (int i = 0; i < 41; ++i) CHECK(f.at(i, 40 - j) == doctest::Approx(1.0 - f.at(i, j)).epsilon(1e-8));
  }
}

TEST_CASE("field CSV dump is row-major") {
  const LandscapeSpec s = testsupport::make_spec(10, 3, 1);
  const StreamField f = solve(s, 1);
  std::ostringstream out;
  write_field_csv(f, out);
  CHECK(out.str() == "0,0,0\n0.5,0.5,0.5\n1,1,1\n");
}
