#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "skyroad/airspace.hpp"

namespace skyroad {

struct SolverConfig {
  double tolerance = 1e-6;
  int max_iterations = 100000;
  double relaxation_omega = 1.8;

  // Throws ValidationError.
  void validate() const;
};

// Stream values prescribed on the outer boundary of one floor. The two
// lateral sides hold psi_min / psi_max; the inflow and outflow sides carry
// the linear interpolants anchored at A and C.
struct BoundaryValues {
  double psi_min = 0.0;
  double psi_max = 1.0;
  Vec2 r_a, r_b, r_c, r_d;
  Vec2 n1, n2;
  int n_x = 0;
  int n_y = 0;
  // Per grid node; NaN for interior nodes.
  std::vector<double> node_values;

  double inflow(Vec2 r) const;   // interpolant along the A-B side
  double outflow(Vec2 r) const;  // interpolant along the C-D side
  double at(int i, int j) const { return node_values[static_cast<std::size_t>(j) * n_x + i]; }
};

BoundaryValues external_boundary_values(const FloorSlice& floor);

// Constant stream value of the keep-out zone holding `obstacle_id`: the
// inflow interpolant where the n1-parallel line through the zone center
// meets the inflow side.
double obstacle_level(const FloorSlice& floor, const std::string& obstacle_id, const BoundaryValues& bvals);

// Same, by zone index on the floor.
double zone_level(const FloorSlice& floor, std::size_t zone, const BoundaryValues& bvals);

// obstacle_level for every obstacle present on the floor.
std::map<std::string, double> obstacle_levels(const FloorSlice& floor, const BoundaryValues& bvals);

struct StreamField {
  int floor_index = 0;
  int n_x = 0;
  int n_y = 0;
  double spacing_x = 1.0;
  double spacing_y = 1.0;
  double psi_min = 0.0;
  double psi_max = 1.0;
  std::vector<double> psi;
  std::vector<char> dirichlet;
  std::map<std::string, double> obstacle_levels;
  std::vector<double> zone_levels;  // indexed like FloorSlice::zones
  double residual = 0.0;
  int iterations = 0;
  double tolerance = 0.0;

  double at(int i, int j) const { return psi[static_cast<std::size_t>(j) * n_x + i]; }
  bool fixed(int i, int j) const { return dirichlet[static_cast<std::size_t>(j) * n_x + i] != 0; }
  bool converged() const { return residual <= tolerance; }
};

// Successive over-relaxation on the 5-point stencil. Boundary nodes and all
// keep-out nodes are Dirichlet. Throws NonConvergenceError.
StreamField solve_laplace(const FloorSlice& floor, const BoundaryValues& bvals,
                          const std::map<std::string, double>& levels, const SolverConfig& config);

// Max stencil residual over free nodes, normalized by psi_max - psi_min.
double residual(const StreamField& field);

// Row-major CSV (one row per y index).
void write_field_csv(const StreamField& field, std::ostream& out);

}  // namespace skyroad
