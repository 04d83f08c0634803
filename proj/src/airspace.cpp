#include "skyroad/airspace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "skyroad/errors.hpp"

namespace skyroad {

namespace {

using nlohmann::json;

std::string obstacle_id_from(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw ParseError("obstacle id must be a string or integer");
}

template <typename T>
T field(const json& obj, const char* key, const char* context) {
  if (!obj.contains(key)) throw ParseError(std::string("missing field '") + context + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + context + key + "' has the wrong type");
  }
}

}  // namespace

void validate_landscape(const LandscapeSpec& spec) {
  if (!(spec.x_extent > 0.0)) throw ValidationError("extent[0] must be positive");
  if (!(spec.y_extent > 0.0)) throw ValidationError("extent[1] must be positive");
  if (spec.n_x < 2) throw ValidationError("grid[0] (n_x) must be >= 2");
  if (spec.n_y < 2) throw ValidationError("grid[1] (n_y) must be >= 2");
  if (spec.n_z < 1) throw ValidationError("floors.count (n_z) must be >= 1");
  if (!(spec.delta_z > 0.0)) throw ValidationError("floors.spacing_m (delta_z) must be positive");
  if (!(spec.psi_min < spec.psi_max)) throw ValidationError("psi.min must be below psi.max");

  std::set<std::string> seen;
  for (const ObstaclePrism& o : spec.obstacles) {
    if (!seen.insert(o.id).second) throw ValidationError("duplicate obstacle id '" + o.id + "'");
    if (o.footprint.size() < 3) {
      throw ValidationError("obstacle '" + o.id + "' footprint needs at least 3 vertices");
    }
    if (!(o.height > 0.0)) throw ValidationError("obstacle '" + o.id + "' height_m must be positive");
    for (const Vec2& p : o.footprint) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < 0.0 || p.y < 0.0 ||
          p.x > spec.x_extent || p.y > spec.y_extent) {
        throw ValidationError("obstacle '" + o.id + "' footprint leaves the domain");
      }
      // The boundary carries the external stream values; a keep-out zone
      // touching it would need two different values at once.
      if (p.x == 0.0 || p.y == 0.0 || p.x == spec.x_extent || p.y == spec.y_extent) {
        throw ValidationError("obstacle '" + o.id + "' touches the external boundary");
      }
    }
    if (!is_simple_polygon(o.footprint)) {
      throw ValidationError("obstacle '" + o.id + "' footprint is not a simple polygon");
    }
  }
}

LandscapeSpec parse_landscape(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("landscape is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("landscape root must be an object");

  LandscapeSpec spec;
  const auto extent = field<std::vector<double>>(doc, "extent", "");
  const auto grid = field<std::vector<int>>(doc, "grid", "");
  if (extent.size() != 2) throw ParseError("'extent' must be [x, y]");
  if (grid.size() != 2) throw ParseError("'grid' must be [n_x, n_y]");
  spec.x_extent = extent[0];
  spec.y_extent = extent[1];
  spec.n_x = grid[0];
  spec.n_y = grid[1];

  const json floors = field<json>(doc, "floors", "");
  spec.n_z = field<int>(floors, "count", "floors.");
  spec.delta_z = field<double>(floors, "spacing_m", "floors.");

  if (doc.contains("psi")) {
    const json psi = doc.at("psi");
    spec.psi_min = field<double>(psi, "min", "psi.");
    spec.psi_max = field<double>(psi, "max", "psi.");
  }

  if (doc.contains("obstacles")) {
    const json& list = doc.at("obstacles");
    if (!list.is_array()) throw ParseError("'obstacles' must be an array");
    for (const json& entry : list) {
      ObstaclePrism o;
      if (!entry.contains("id")) throw ParseError("obstacle without 'id'");
      o.id = obstacle_id_from(entry.at("id"));
      const auto pts = field<std::vector<std::array<double, 2>>>(entry, "footprint", "obstacles[].");
      for (const auto& p : pts) o.footprint.push_back({p[0], p[1]});
      o.height = field<double>(entry, "height_m", "obstacles[].");
      spec.obstacles.push_back(std::move(o));
    }
  }
  validate_landscape(spec);
  return spec;
}

LandscapeSpec load_landscape(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read landscape file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_landscape(buffer.str());
}

std::string landscape_to_json(const LandscapeSpec& spec) {
  json doc;
  doc["extent"] = {spec.x_extent, spec.y_extent};
  doc["grid"] = {spec.n_x, spec.n_y};
  doc["floors"] = {{"count", spec.n_z}, {"spacing_m", spec.delta_z}};
  doc["psi"] = {{"min", spec.psi_min}, {"max", spec.psi_max}};
  doc["obstacles"] = json::array();
  for (const ObstaclePrism& o : spec.obstacles) {
    json pts = json::array();
    for (const Vec2& p : o.footprint) pts.push_back({p.x, p.y});
    doc["obstacles"].push_back({{"id", o.id}, {"footprint", pts}, {"height_m", o.height}});
  }
  return doc.dump(2);
}

std::pair<int, int> FloorSlice::cell_of(Vec2 p) const {
  const int i = std::clamp(static_cast<int>(std::floor(p.x / spacing_x + 0.5)), 0, n_x - 1);
  const int j = std::clamp(static_cast<int>(std::floor(p.y / spacing_y + 0.5)), 0, n_y - 1);
  return {i, j};
}

const KeepoutZone* FloorSlice::zone_containing(std::string_view obstacle_id) const {
  for (const KeepoutZone& z : zones) {
    if (std::find(z.obstacle_ids.begin(), z.obstacle_ids.end(), obstacle_id) != z.obstacle_ids.end()) {
      return &z;
    }
  }
  return nullptr;
}

const FloorSlice::PresentObstacle* FloorSlice::find_present(std::string_view obstacle_id) const {
  for (const PresentObstacle& o : present_obstacles) {
    if (o.id == obstacle_id) return &o;
  }
  return nullptr;
}

Vec2 nominal_direction(int floor) { return floor % 2 == 1 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0}; }

void orient_floor(FloorSlice& floor, Vec2 n1) {
  const bool axis = (std::abs(n1.x) == 1.0 && n1.y == 0.0) || (n1.x == 0.0 && std::abs(n1.y) == 1.0);
  if (!axis) throw GeometryError("nominal direction must be an axis direction on a rectangular domain");
  floor.n1 = n1;
  floor.n2 = rotate_ccw90(n1);
  const std::array<Vec2, 4> corners = {Vec2{0.0, 0.0}, Vec2{floor.x_extent, 0.0},
                                       Vec2{0.0, floor.y_extent}, Vec2{floor.x_extent, floor.y_extent}};
  // A: inflow/low-psi, B: inflow/high-psi, C: outflow/low-psi, D: outflow/high-psi.
  auto pick = [&](bool high_n1, bool high_n2) {
    Vec2 best = corners[0];
    double best_score = -1e300;
    for (const Vec2& c : corners) {
      const double score = (high_n1 ? 1.0 : -1.0) * dot(c, floor.n1) * 1e6 +
                           (high_n2 ? 1.0 : -1.0) * dot(c, floor.n2);
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    return best;
  };
  floor.r_a = pick(false, false);
  floor.r_b = pick(false, true);
  floor.r_c = pick(true, false);
  floor.r_d = pick(true, true);
}

FloorSlice slice_floor(const LandscapeSpec& spec, int floor_index) {
  if (floor_index < 1 || floor_index > spec.n_z) {
    throw IndexError("floor " + std::to_string(floor_index) + " outside 1.." + std::to_string(spec.n_z));
  }
  FloorSlice floor;
  floor.floor_index = floor_index;
  floor.elevation = spec.elevation(floor_index);
  floor.n_x = spec.n_x;
  floor.n_y = spec.n_y;
  floor.spacing_x = spec.spacing_x();
  floor.spacing_y = spec.spacing_y();
  floor.x_extent = spec.x_extent;
  floor.y_extent = spec.y_extent;
  floor.psi_min = spec.psi_min;
  floor.psi_max = spec.psi_max;
  orient_floor(floor, nominal_direction(floor_index));

  const std::size_t cells = static_cast<std::size_t>(spec.n_x) * spec.n_y;
  floor.keepout_mask.assign(cells, 0);
  floor.zone_of_cell.assign(cells, -1);
  std::vector<std::vector<int>> owners(cells);

  for (std::size_t k = 0; k < spec.obstacles.size(); ++k) {
    const ObstaclePrism& o = spec.obstacles[k];
    if (!(o.height > floor.elevation)) continue;
    floor.present_obstacles.push_back({o.id, polygon_centroid(o.footprint)});
    double lo_x = o.footprint[0].x, hi_x = lo_x, lo_y = o.footprint[0].y, hi_y = lo_y;
    for (const Vec2& p : o.footprint) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    const int i0 = std::max(0, static_cast<int>(std::floor(lo_x / floor.spacing_x)));
    const int i1 = std::min(spec.n_x - 1, static_cast<int>(std::ceil(hi_x / floor.spacing_x)));
    const int j0 = std::max(0, static_cast<int>(std::floor(lo_y / floor.spacing_y)));
    const int j1 = std::min(spec.n_y - 1, static_cast<int>(std::ceil(hi_y / floor.spacing_y)));
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) {
        if (point_in_polygon(floor.node(i, j), o.footprint)) {
          floor.keepout_mask[floor.index(i, j)] = 1;
          owners[floor.index(i, j)].push_back(static_cast<int>(k));
        }
      }
    }
  }

  // Label 8-connected keep-out components in scan order.
  std::vector<std::pair<int, int>> stack;
  for (int j = 0; j < spec.n_y; ++j) {
    for (int i = 0; i < spec.n_x; ++i) {
      if (!floor.keepout(i, j) || floor.zone_of_cell[floor.index(i, j)] >= 0) continue;
      const int label = static_cast<int>(floor.zones.size());
      std::set<int> members;
      std::size_t count = 0;
      stack.push_back({i, j});
      floor.zone_of_cell[floor.index(i, j)] = label;
      while (!stack.empty()) {
        auto [ci, cj] = stack.back();
        stack.pop_back();
        ++count;
        for (int owner : owners[floor.index(ci, cj)]) members.insert(owner);
        for (int dj = -1; dj <= 1; ++dj) {
          for (int di = -1; di <= 1; ++di) {
            const int ni = ci + di;
            const int nj = cj + dj;
            if (ni < 0 || nj < 0 || ni >= spec.n_x || nj >= spec.n_y) continue;
            if (!floor.keepout(ni, nj) || floor.zone_of_cell[floor.index(ni, nj)] >= 0) continue;
            floor.zone_of_cell[floor.index(ni, nj)] = label;
            stack.push_back({ni, nj});
          }
        }
      }
      KeepoutZone zone;
      zone.cell_count = count;
      double area_sum = 0.0;
      Vec2 weighted;
      for (int owner : members) {
        const ObstaclePrism& o = spec.obstacles[owner];
        zone.obstacle_ids.push_back(o.id);
        const double area = std::abs(signed_area(o.footprint));
        weighted = weighted + polygon_centroid(o.footprint) * area;
        area_sum += area;
      }
      zone.center = weighted * (1.0 / area_sum);
      floor.zones.push_back(std::move(zone));
    }
  }
  return floor;
}

}  // namespace skyroad
