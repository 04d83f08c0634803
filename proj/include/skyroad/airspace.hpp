#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "skyroad/geometry.hpp"

namespace skyroad {

// An extruded building or restricted volume: footprint polygon from the
// ground up to `height` meters.
struct ObstaclePrism {
  std::string id;
  std::vector<Vec2> footprint;
  double height = 0.0;
};

// The urban world the skyroads are generated for. Grid nodes sit at
// (i * spacing_x(), j * spacing_y()) for i < n_x, j < n_y; floor h (1-based)
// is at elevation h * delta_z.
struct LandscapeSpec {
  double x_extent = 0.0;
  double y_extent = 0.0;
  int n_x = 0;
  int n_y = 0;
  int n_z = 0;
  double delta_z = 0.0;
  double psi_min = 0.0;
  double psi_max = 1.0;
  std::vector<ObstaclePrism> obstacles;

  double spacing_x() const { return x_extent / (n_x - 1); }
  double spacing_y() const { return y_extent / (n_y - 1); }
  double elevation(int floor) const { return floor * delta_z; }
};

// Throws ValidationError naming the offending field or obstacle id.
void validate_landscape(const LandscapeSpec& spec);

// Parses and validates the landscape JSON document.
LandscapeSpec parse_landscape(std::string_view text);
LandscapeSpec load_landscape(const std::filesystem::path& path);
std::string landscape_to_json(const LandscapeSpec& spec);

// A connected (8-neighbour) component of keep-out nodes on one floor.
// Obstacles whose rasterized cells touch are merged into a single zone.
struct KeepoutZone {
  std::vector<std::string> obstacle_ids;
  Vec2 center;  // area-weighted centroid of the member footprints
  std::size_t cell_count = 0;
};

struct FloorSlice {
  int floor_index = 0;
  double elevation = 0.0;
  int n_x = 0;
  int n_y = 0;
  double spacing_x = 0.0;
  double spacing_y = 0.0;
  double x_extent = 0.0;
  double y_extent = 0.0;
  double psi_min = 0.0;
  double psi_max = 1.0;

  // Row-major by y: cell (i, j) lives at j * n_x + i.
  std::vector<char> keepout_mask;
  std::vector<int> zone_of_cell;  // -1 for keep-in cells
  std::vector<KeepoutZone> zones;

  // Obstacles taller than this floor, with their footprint centroids.
  struct PresentObstacle {
    std::string id;
    Vec2 centroid;
  };
  std::vector<PresentObstacle> present_obstacles;

  Vec2 n1;  // nominal travel direction
  Vec2 n2;  // n1 turned +90 degrees about +z
  Vec2 r_a, r_b, r_c, r_d;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * n_x + i; }
  bool keepout(int i, int j) const { return keepout_mask[index(i, j)] != 0; }
  // The last row/column maps exactly onto the extent.
  Vec2 node(int i, int j) const {
    return {i == n_x - 1 ? x_extent : i * spacing_x, j == n_y - 1 ? y_extent : j * spacing_y};
  }
  // Grid cell whose center (node) is closest to p, clamped to the grid.
  std::pair<int, int> cell_of(Vec2 p) const;
  bool on_boundary(int i, int j) const { return i == 0 || j == 0 || i == n_x - 1 || j == n_y - 1; }
  const KeepoutZone* zone_containing(std::string_view obstacle_id) const;
  const PresentObstacle* find_present(std::string_view obstacle_id) const;
};

// Nominal direction policy: odd floors run along +x, even floors along +y.
Vec2 nominal_direction(int floor);

// Sets n1, n2 and the boundary corners A-D for the given nominal direction,
// which must be one of the four axis directions.
void orient_floor(FloorSlice& floor, Vec2 n1);

// Throws IndexError unless 1 <= floor <= n_z.
FloorSlice slice_floor(const LandscapeSpec& spec, int floor);

}  // namespace skyroad
