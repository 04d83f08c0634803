#include "skyroad/streamfield.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "skyroad/errors.hpp"

namespace skyroad {

namespace {

enum class Side { inflow, outflow, low, high };

// Which boundary segment a boundary node belongs to. Corners go to the
// inflow/outflow sides; the interpolants agree with psi_min/psi_max there.
Side side_of(const FloorSlice& floor, int i, int j) {
  auto matches = [](Vec2 outward, Vec2 dir) { return dot(outward, dir) > 0.5; };
  std::vector<Vec2> normals;
  if (i == 0) normals.push_back({-1.0, 0.0});
  if (i == floor.n_x - 1) normals.push_back({1.0, 0.0});
  if (j == 0) normals.push_back({0.0, -1.0});
  if (j == floor.n_y - 1) normals.push_back({0.0, 1.0});
  for (const Vec2& n : normals) {
    if (matches(n, floor.n1 * -1.0)) return Side::inflow;
    if (matches(n, floor.n1)) return Side::outflow;
  }
  for (const Vec2& n : normals) {
    if (matches(n, floor.n2 * -1.0)) return Side::low;
  }
  return Side::high;
}

double stencil_residual(const std::vector<double>& psi, int n_x, std::size_t c, double ax, double ay) {
  const double lap = ax * (psi[c + 1] + psi[c - 1]) + ay * (psi[c + n_x] + psi[c - n_x]) -
                     2.0 * (ax + ay) * psi[c];
  // Scaled so a square grid gives |4 psi - sum of neighbours|.
  return std::abs(lap) * 2.0 / (ax + ay);
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw ValidationError("solver tolerance must be positive");
  if (max_iterations <= 0) throw ValidationError("solver max_iterations must be positive");
  if (!(relaxation_omega > 0.0 && relaxation_omega < 2.0)) {
    throw ValidationError("solver relaxation_omega must lie in (0, 2)");
  }
}

double BoundaryValues::inflow(Vec2 r) const {
  const double den = dot(r_b - r_a, n2);
  if (den == 0.0) throw DegenerateBoundaryError("(r_B - r_A) . n2 vanishes");
  return psi_min + dot(r - r_a, n2) / den * (psi_max - psi_min);
}

double BoundaryValues::outflow(Vec2 r) const {
  const double den = dot(r_d - r_c, n2);
  if (den == 0.0) throw DegenerateBoundaryError("(r_D - r_C) . n2 vanishes");
  return psi_min + dot(r - r_c, n2) / den * (psi_max - psi_min);
}

BoundaryValues external_boundary_values(const FloorSlice& floor) {
  BoundaryValues b;
  b.psi_min = floor.psi_min;
  b.psi_max = floor.psi_max;
  b.r_a = floor.r_a;
  b.r_b = floor.r_b;
  b.r_c = floor.r_c;
  b.r_d = floor.r_d;
  b.n1 = floor.n1;
  b.n2 = floor.n2;
  b.n_x = floor.n_x;
  b.n_y = floor.n_y;
  if (dot(b.r_b - b.r_a, b.n2) == 0.0) throw DegenerateBoundaryError("(r_B - r_A) . n2 vanishes");
  if (dot(b.r_d - b.r_c, b.n2) == 0.0) throw DegenerateBoundaryError("(r_D - r_C) . n2 vanishes");

  b.node_values.assign(static_cast<std::size_t>(floor.n_x) * floor.n_y,
                       std::numeric_limits<double>::quiet_NaN());
  for (int j = 0; j < floor.n_y; ++j) {
    for (int i = 0; i < floor.n_x; ++i) {
      if (!floor.on_boundary(i, j)) continue;
      double value = 0.0;
      switch (side_of(floor, i, j)) {
        case Side::inflow: value = b.inflow(floor.node(i, j)); break;
        case Side::outflow: value = b.outflow(floor.node(i, j)); break;
        case Side::low: value = b.psi_min; break;
        case Side::high: value = b.psi_max; break;
      }
      b.node_values[floor.index(i, j)] = value;
    }
  }
  return b;
}

namespace {

double level_through(Vec2 center, const BoundaryValues& bvals, const std::string& what) {
  // Crossing with the inflow side (the line through A perpendicular to n1).
  const Vec2 on_inflow = center - bvals.n1 * dot(center - bvals.r_a, bvals.n1);
  const double t = dot(on_inflow - bvals.r_a, bvals.n2) / dot(bvals.r_b - bvals.r_a, bvals.n2);
  if (t < -1e-12 || t > 1.0 + 1e-12) {
    throw GeometryError("line through the center of " + what + " misses the inflow side");
  }
  const double psi_in = bvals.inflow(on_inflow);
  const Vec2 on_outflow = center + bvals.n1 * dot(bvals.r_c - center, bvals.n1);
  const double psi_out = bvals.outflow(on_outflow);
  if (std::abs(psi_in - psi_out) > 1e-9) {
    throw GeometryError("inflow and outflow sides disagree for " + what);
  }
  return psi_in;
}

}  // namespace

double zone_level(const FloorSlice& floor, std::size_t zone, const BoundaryValues& bvals) {
  if (zone >= floor.zones.size()) throw IndexError("zone index out of range");
  return level_through(floor.zones[zone].center, bvals, "keep-out zone " + std::to_string(zone));
}

double obstacle_level(const FloorSlice& floor, const std::string& obstacle_id, const BoundaryValues& bvals) {
  const auto* present = floor.find_present(obstacle_id);
  if (present == nullptr) {
    throw ObstacleNotOnFloorError("obstacle '" + obstacle_id + "' does not reach floor " +
                                  std::to_string(floor.floor_index));
  }
  const KeepoutZone* zone = floor.zone_containing(obstacle_id);
  const Vec2 center = zone != nullptr ? zone->center : present->centroid;
  return level_through(center, bvals, "obstacle '" + obstacle_id + "'");
}

std::map<std::string, double> obstacle_levels(const FloorSlice& floor, const BoundaryValues& bvals) {
  std::map<std::string, double> levels;
  for (const auto& o : floor.present_obstacles) levels[o.id] = obstacle_level(floor, o.id, bvals);
  return levels;
}

StreamField solve_laplace(const FloorSlice& floor, const BoundaryValues& bvals,
                          const std::map<std::string, double>& levels, const SolverConfig& config) {
  config.validate();
  StreamField field;
  field.floor_index = floor.floor_index;
  field.n_x = floor.n_x;
  field.n_y = floor.n_y;
  field.spacing_x = floor.spacing_x;
  field.spacing_y = floor.spacing_y;
  field.psi_min = floor.psi_min;
  field.psi_max = floor.psi_max;
  field.obstacle_levels = levels;
  field.tolerance = config.tolerance;

  field.zone_levels.resize(floor.zones.size());
  for (std::size_t z = 0; z < floor.zones.size(); ++z) {
    const auto& ids = floor.zones[z].obstacle_ids;
    const auto it = ids.empty() ? levels.end() : levels.find(ids.front());
    if (it == levels.end()) throw ValidationError("no stream level for keep-out zone " + std::to_string(z));
    field.zone_levels[z] = it->second;
  }

  const std::size_t cells = static_cast<std::size_t>(floor.n_x) * floor.n_y;
  field.psi.assign(cells, 0.0);
  field.dirichlet.assign(cells, 0);
  const double width = dot(bvals.r_b - bvals.r_a, bvals.n2);
  for (int j = 0; j < floor.n_y; ++j) {
    for (int i = 0; i < floor.n_x; ++i) {
      const std::size_t c = floor.index(i, j);
      if (floor.on_boundary(i, j)) {
        field.psi[c] = bvals.node_values[c];
        field.dirichlet[c] = 1;
      } else if (floor.keepout_mask[c]) {
        field.psi[c] = field.zone_levels[floor.zone_of_cell[c]];
        field.dirichlet[c] = 1;
      } else {
        // Undisturbed uniform flow as the starting guess.
        const double t = dot(floor.node(i, j) - bvals.r_a, bvals.n2) / width;
        field.psi[c] = bvals.psi_min + t * (bvals.psi_max - bvals.psi_min);
      }
    }
  }

  const double ax = 1.0 / (floor.spacing_x * floor.spacing_x);
  const double ay = 1.0 / (floor.spacing_y * floor.spacing_y);
  const double diag = 2.0 * (ax + ay);
  const double omega = config.relaxation_omega;
  std::vector<std::size_t> free_cells;
  for (int j = 1; j < floor.n_y - 1; ++j) {
    for (int i = 1; i < floor.n_x - 1; ++i) {
      if (!field.dirichlet[floor.index(i, j)]) free_cells.push_back(floor.index(i, j));
    }
  }

  auto& psi = field.psi;
  const int n_x = floor.n_x;
  const double range = field.psi_max - field.psi_min;
  auto current_residual = [&] {
    double worst = 0.0;
    for (std::size_t c : free_cells) worst = std::max(worst, stencil_residual(psi, n_x, c, ax, ay));
    return worst / range;
  };

  field.residual = current_residual();
  while (field.residual > config.tolerance) {
    if (field.iterations >= config.max_iterations) {
      throw NonConvergenceError("floor " + std::to_string(floor.floor_index) + ": residual " +
                                std::to_string(field.residual) + " after " +
                                std::to_string(field.iterations) + " iterations");
    }
    for (std::size_t c : free_cells) {
      const double gs = (ax * (psi[c + 1] + psi[c - 1]) + ay * (psi[c + n_x] + psi[c - n_x])) / diag;
      psi[c] += omega * (gs - psi[c]);
    }
    ++field.iterations;
    field.residual = current_residual();
  }
  return field;
}

double residual(const StreamField& field) {
  const double ax = 1.0 / (field.spacing_x * field.spacing_x);
  const double ay = 1.0 / (field.spacing_y * field.spacing_y);
  double worst = 0.0;
  for (int j = 1; j < field.n_y - 1; ++j) {
    for (int i = 1; i < field.n_x - 1; ++i) {
      if (field.fixed(i, j)) continue;
      const std::size_t c = static_cast<std::size_t>(j) * field.n_x + i;
      worst = std::max(worst, stencil_residual(field.psi, field.n_x, c, ax, ay));
    }
  }
  return worst / (field.psi_max - field.psi_min);
}

void write_field_csv(const StreamField& field, std::ostream& out) {
  out << std::setprecision(17);
  for (int j = 0; j < field.n_y; ++j) {
    for (int i = 0; i < field.n_x; ++i) {
      if (i > 0) out << ',';
      out << field.at(i, j);
    }
    out << '\n';
  }
}

}  // namespace skyroad
