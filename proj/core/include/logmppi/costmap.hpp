// Copyright (c) 2026 The logmppi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logmppi/geometry.hpp"

namespace logmppi {

enum class CellState : uint8_t { kFree, kOccupied, kInflated, kUnknown };

// Axis-aligned occupancy grid. The origin is the world position of the lower
// left corner of cell (0, 0); cell (ix, iy) covers the square
// [origin + ix*res, origin + (ix+1)*res) and its center sits at
// origin + (ix + 0.5)*res. Cells are stored row by row (iy major).
//
// Grids are built once per sensing pass and then treated as immutable
// snapshots, so they can be shared read-only across rollout workers.
class OccupancyGrid {
 public:
  OccupancyGrid(int width, int height, double resolution, double origin_x,
                double origin_y, CellState fill = CellState::kUnknown);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  double origin_x() const { return origin_x_; }
  double origin_y() const { return origin_y_; }

  bool in_bounds(int ix, int iy) const {
    return ix >= 0 && iy >= 0 && ix < width_ && iy < height_;
  }
  CellState at(int ix, int iy) const {
    return cells_[static_cast<size_t>(iy) * width_ + ix];
  }
  void set(int ix, int iy, CellState state) {
    cells_[static_cast<size_t>(iy) * width_ + ix] = state;
  }

  double cell_center_x(int ix) const {
    return origin_x_ + (ix + 0.5) * resolution_;
  }
  double cell_center_y(int iy) const {
    return origin_y_ + (iy + 0.5) * resolution_;
  }
  int cell_index_x(double x) const;
  int cell_index_y(double y) const;

  bool operator==(const OccupancyGrid& other) const = default;

 private:
  int width_;
  int height_;
  double resolution_;
  double origin_x_;
  double origin_y_;
  std::vector<CellState> cells_;
};

// Rotating range finder approximated by evenly spaced beams. Beams sweep the
// field of view centered on the robot heading.
struct SensorSpec {
  double max_range = 6.0;
  double angular_resolution = 2.0 * 3.14159265358979323846 / 1800.0;
  double field_of_view = 2.0 * 3.14159265358979323846;

  int beam_count() const;
};

struct GridParams {
  int width = 240;
  int height = 240;
  double resolution = 0.05;
};

struct RobotFootprint {
  double radius = 0.3;
};

// Builds a robot-centered grid by casting sensor beams against the disc
// obstacles. Cells a beam passes through become free, the cell containing
// each beam's first obstacle hit becomes occupied, everything else stays
// unknown. Free marking and hit marking run as two separate phases so the
// result does not depend on beam order. The grid origin is snapped to a
// whole number of cells, which keeps cell boundaries aligned across
// recenterings.
OccupancyGrid build_from_world(const std::vector<Disc>& obstacles,
                               const Pose2& center, const GridParams& params,
                               const SensorSpec& sensor);

// Builds a fully known grid covering [min_x, min_x + width*res) x
// [min_y, ...): every cell is free unless its center lies inside an obstacle.
OccupancyGrid rasterize_discs(const std::vector<Disc>& obstacles, double min_x,
                              double min_y, int width, int height,
                              double resolution);

// Marks every free or unknown cell whose center lies within
// inflation_radius of an occupied cell center as inflated. Occupied cells
// are never changed, and inflated cells never seed further growth, so the
// operation is idempotent.
OccupancyGrid inflate(const OccupancyGrid& grid, double inflation_radius);

// True when any cell whose center lies within footprint.radius of (x, y) is
// occupied, inflated, or (when unknown_is_lethal) unknown. Positions beyond
// the grid edge are treated as unknown cells.
bool is_collision(const OccupancyGrid& grid, double x, double y,
                  const RobotFootprint& footprint, bool unknown_is_lethal);

// Rebuilds the robot-centered grid about a new pose. Deterministic given the
// same world, pose, and sensor.
OccupancyGrid recenter(const Pose2& new_center, const std::vector<Disc>& obstacles,
                       const GridParams& params, const SensorSpec& sensor);

// Precomputed collision oracle for one grid snapshot. Answers exactly the
// same predicate as is_collision but in O(1) per query away from decision
// boundaries: a Euclidean distance transform of the lethal cells gives a
// conservative accept/reject band, and only queries inside the band fall
// back to the exact cell scan. Copies what it needs from the grid, so the
// grid may be discarded after construction.
class CollisionChecker {
 public:
  CollisionChecker(const OccupancyGrid& grid, const RobotFootprint& footprint,
                   bool unknown_is_lethal);

  bool in_collision(double x, double y) const;

  double footprint_radius() const { return radius_; }

 private:
  bool exact_scan(double x, double y) const;

  int width_;
  int height_;
  double resolution_;
  double origin_x_;
  double origin_y_;
  double radius_;
  bool unknown_is_lethal_;
  bool any_lethal_;
  std::vector<uint8_t> lethal_;
  std::vector<double> dist2_;  // squared distance to nearest lethal center, m^2
};

// Portable ASCII form: a fixed header (dimensions, hexfloat geometry) plus
// one character per cell. Round-trips bit-exactly through parse_grid.
std::string serialize_grid(const OccupancyGrid& grid);
OccupancyGrid parse_grid(const std::string& text);

}  // namespace logmppi
