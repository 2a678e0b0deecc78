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

#include "logmppi/costmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace logmppi {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Finite stand-in for "no source in this scanline" inside the distance
// transform; infinities would turn the parabola intersection into NaN.
constexpr double kFarAway = 1e20;

char cell_to_char(CellState s) {
  switch (s) {
    case CellState::kFree:
      return '.';
    case CellState::kOccupied:
      return '#';
    case CellState::kInflated:
      return '+';
    case CellState::kUnknown:
      return '?';
  }
  return '?';
}

CellState char_to_cell(char c) {
  switch (c) {
    case '.':
      return CellState::kFree;
    case '#':
      return CellState::kOccupied;
    case '+':
      return CellState::kInflated;
    case '?':
      return CellState::kUnknown;
    default:
      throw std::invalid_argument("unrecognized grid cell character");
  }
}

// Distance along the ray (origin c, unit direction d) to the first boundary
// crossing of the disc, or +inf when the ray misses. A ray starting inside
// the disc reports 0.
double ray_disc_entry(double cx, double cy, double dx, double dy,
                      const Disc& disc) {
  const double ox = disc.x - cx;
  const double oy = disc.y - cy;
  const double center_d2 = ox * ox + oy * oy;
  const double r2 = disc.radius * disc.radius;
  if (center_d2 <= r2) {
    return 0.0;
  }
  const double b = dx * ox + dy * oy;
  const double discriminant = b * b - (center_d2 - r2);
  if (discriminant < 0.0) {
    return kInf;
  }
  const double entry = b - std::sqrt(discriminant);
  return entry >= 0.0 ? entry : kInf;
}

// One-dimensional squared distance transform (Felzenszwalb & Huttenlocher).
// f holds squared source distances sampled on the integer lattice; d receives
// the lower envelope. v and z are scratch buffers of size n and n + 1.
void dt1d(const double* f, int n, double* d, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -kFarAway;
  z[1] = kFarAway;
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * (q - v[k]));
    while (s <= z[k]) {
      --k;
      s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * (q - v[k]));
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kFarAway;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

double snap_to_cells(double value, double resolution) {
  return static_cast<double>(std::llround(value / resolution)) * resolution;
}

}  // namespace

OccupancyGrid::OccupancyGrid(int width, int height, double resolution,
                             double origin_x, double origin_y, CellState fill)
    : width_(width),
      height_(height),
      resolution_(resolution),
      origin_x_(origin_x),
      origin_y_(origin_y),
      cells_(static_cast<size_t>(std::max(width, 0)) *
                 static_cast<size_t>(std::max(height, 0)),
             fill) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
}

int OccupancyGrid::cell_index_x(double x) const {
  return static_cast<int>(std::floor((x - origin_x_) / resolution_));
}

int OccupancyGrid::cell_index_y(double y) const {
  return static_cast<int>(std::floor((y - origin_y_) / resolution_));
}

int SensorSpec::beam_count() const {
  return std::max(1, static_cast<int>(std::llround(field_of_view / angular_resolution)));
}

OccupancyGrid build_from_world(const std::vector<Disc>& obstacles,
                               const Pose2& center, const GridParams& params,
                               const SensorSpec& sensor) {
  const double res = params.resolution;
  const double origin_x = snap_to_cells(center.x - 0.5 * params.width * res, res);
  const double origin_y = snap_to_cells(center.y - 0.5 * params.height * res, res);
  OccupancyGrid grid(params.width, params.height, res, origin_x, origin_y,
                     CellState::kUnknown);

  const int beams = sensor.beam_count();
  const double spacing = sensor.field_of_view / beams;
  const double start_angle = center.heading - 0.5 * sensor.field_of_view;

  // Phase one: analytic first hits and free-space traversal. Hits are only
  // recorded here and painted afterwards, so no beam can erase another
  // beam's hit and the result is independent of beam order.
  std::vector<std::pair<int, int>> hit_cells;
  hit_cells.reserve(static_cast<size_t>(beams));
  for (int b = 0; b < beams; ++b) {
    const double angle = start_angle + b * spacing;
    const double dx = std::cos(angle);
    const double dy = std::sin(angle);

    double t_hit = kInf;
    for (const Disc& disc : obstacles) {
      t_hit = std::min(t_hit, ray_disc_entry(center.x, center.y, dx, dy, disc));
    }
    const bool hit = t_hit <= sensor.max_range;
    const double t_stop = hit ? t_hit : sensor.max_range;

    if (hit) {
      const double hx = center.x + t_hit * dx;
      const double hy = center.y + t_hit * dy;
      const int hix = grid.cell_index_x(hx);
      const int hiy = grid.cell_index_y(hy);
      if (grid.in_bounds(hix, hiy)) {
        hit_cells.emplace_back(hix, hiy);
      }
    }

    // Grid traversal from the sensor to t_stop, marking entered cells free.
    int ix = grid.cell_index_x(center.x);
    int iy = grid.cell_index_y(center.y);
    const int step_x = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
    const int step_y = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);
    const double t_delta_x = step_x != 0 ? res / std::abs(dx) : kInf;
    const double t_delta_y = step_y != 0 ? res / std::abs(dy) : kInf;
    double t_max_x = kInf;
    if (step_x > 0) {
      t_max_x = (origin_x + (ix + 1) * res - center.x) / dx;
    } else if (step_x < 0) {
      t_max_x = (origin_x + ix * res - center.x) / dx;
    }
    double t_max_y = kInf;
    if (step_y > 0) {
      t_max_y = (origin_y + (iy + 1) * res - center.y) / dy;
    } else if (step_y < 0) {
      t_max_y = (origin_y + iy * res - center.y) / dy;
    }

    double t_entry = 0.0;
    while (t_entry < t_stop && grid.in_bounds(ix, iy)) {
      grid.set(ix, iy, CellState::kFree);
      if (t_max_x < t_max_y) {
        t_entry = t_max_x;
        t_max_x += t_delta_x;
        ix += step_x;
      } else {
        t_entry = t_max_y;
        t_max_y += t_delta_y;
        iy += step_y;
      }
    }
  }

  // Phase two: paint the hits.
  for (const auto& [ix, iy] : hit_cells) {
    grid.set(ix, iy, CellState::kOccupied);
  }
  return grid;
}

OccupancyGrid rasterize_discs(const std::vector<Disc>& obstacles, double min_x,
                              double min_y, int width, int height,
                              double resolution) {
  OccupancyGrid grid(width, height, resolution, snap_to_cells(min_x, resolution),
                     snap_to_cells(min_y, resolution), CellState::kFree);
  for (const Disc& disc : obstacles) {
    const int ix0 = std::max(0, grid.cell_index_x(disc.x - disc.radius) - 1);
    const int ix1 = std::min(width - 1, grid.cell_index_x(disc.x + disc.radius) + 1);
    const int iy0 = std::max(0, grid.cell_index_y(disc.y - disc.radius) - 1);
    const int iy1 = std::min(height - 1, grid.cell_index_y(disc.y + disc.radius) + 1);
    const double r2 = disc.radius * disc.radius;
    for (int iy = iy0; iy <= iy1; ++iy) {
      const double cy = grid.cell_center_y(iy) - disc.y;
      for (int ix = ix0; ix <= ix1; ++ix) {
        const double cx = grid.cell_center_x(ix) - disc.x;
        if (cx * cx + cy * cy <= r2) {
          grid.set(ix, iy, CellState::kOccupied);
        }
      }
    }
  }
  return grid;
}

OccupancyGrid inflate(const OccupancyGrid& grid, double inflation_radius) {
  if (inflation_radius < 0.0) {
    throw std::invalid_argument("inflation radius must be non-negative");
  }
  const double res = grid.resolution();
  const int reach = static_cast<int>(std::ceil(inflation_radius / res));
  std::vector<std::pair<int, int>> offsets;
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      const double d2 = (dx * res) * (dx * res) + (dy * res) * (dy * res);
      if (d2 <= inflation_radius * inflation_radius && (dx != 0 || dy != 0)) {
        offsets.emplace_back(dx, dy);
      }
    }
  }

  std::vector<std::pair<int, int>> occupied;
  for (int iy = 0; iy < grid.height(); ++iy) {
    for (int ix = 0; ix < grid.width(); ++ix) {
      if (grid.at(ix, iy) == CellState::kOccupied) {
        occupied.emplace_back(ix, iy);
      }
    }
  }

  OccupancyGrid out = grid;
  for (const auto& [ox, oy] : occupied) {
    for (const auto& [dx, dy] : offsets) {
      const int ix = ox + dx;
      const int iy = oy + dy;
      if (out.in_bounds(ix, iy) && out.at(ix, iy) != CellState::kOccupied) {
        out.set(ix, iy, CellState::kInflated);
      }
    }
  }
  return out;
}

bool is_collision(const OccupancyGrid& grid, double x, double y,
                  const RobotFootprint& footprint, bool unknown_is_lethal) {
  const double r = footprint.radius;
  const double r2 = r * r;
  const int ix0 = grid.cell_index_x(x - r) - 1;
  const int ix1 = grid.cell_index_x(x + r) + 1;
  const int iy0 = grid.cell_index_y(y - r) - 1;
  const int iy1 = grid.cell_index_y(y + r) + 1;
  for (int iy = iy0; iy <= iy1; ++iy) {
    const double dy = grid.cell_center_y(iy) - y;
    for (int ix = ix0; ix <= ix1; ++ix) {
      const double dx = grid.cell_center_x(ix) - x;
      if (dx * dx + dy * dy > r2) {
        continue;
      }
      if (!grid.in_bounds(ix, iy)) {
        if (unknown_is_lethal) {
          return true;
        }
        continue;
      }
      const CellState s = grid.at(ix, iy);
      if (s == CellState::kOccupied || s == CellState::kInflated ||
          (unknown_is_lethal && s == CellState::kUnknown)) {
        return true;
      }
    }
  }
  return false;
}

OccupancyGrid recenter(const Pose2& new_center,
                       const std::vector<Disc>& obstacles,
                       const GridParams& params, const SensorSpec& sensor) {
  return build_from_world(obstacles, new_center, params, sensor);
}

CollisionChecker::CollisionChecker(const OccupancyGrid& grid,
                                   const RobotFootprint& footprint,
                                   bool unknown_is_lethal)
    : width_(grid.width()),
      height_(grid.height()),
      resolution_(grid.resolution()),
      origin_x_(grid.origin_x()),
      origin_y_(grid.origin_y()),
      radius_(footprint.radius),
      unknown_is_lethal_(unknown_is_lethal),
      any_lethal_(false),
      lethal_(static_cast<size_t>(width_) * height_, 0),
      dist2_(static_cast<size_t>(width_) * height_, kInf) {
  if (!(radius_ > 0.0)) {
    throw std::invalid_argument("footprint radius must be positive");
  }
  for (int iy = 0; iy < height_; ++iy) {
    for (int ix = 0; ix < width_; ++ix) {
      const CellState s = grid.at(ix, iy);
      const bool lethal = s == CellState::kOccupied ||
                          s == CellState::kInflated ||
                          (unknown_is_lethal_ && s == CellState::kUnknown);
      if (lethal) {
        lethal_[static_cast<size_t>(iy) * width_ + ix] = 1;
        any_lethal_ = true;
      }
    }
  }
  if (!any_lethal_) {
    return;
  }

  // Two-pass exact Euclidean distance transform in cell units: columns first,
  // then rows over the column results.
  const int n = std::max(width_, height_);
  std::vector<double> f(static_cast<size_t>(n));
  std::vector<double> d(static_cast<size_t>(n));
  std::vector<int> v(static_cast<size_t>(n));
  std::vector<double> z(static_cast<size_t>(n) + 1);

  for (int ix = 0; ix < width_; ++ix) {
    for (int iy = 0; iy < height_; ++iy) {
      f[iy] = lethal_[static_cast<size_t>(iy) * width_ + ix] ? 0.0 : kFarAway;
    }
    dt1d(f.data(), height_, d.data(), v.data(), z.data());
    for (int iy = 0; iy < height_; ++iy) {
      dist2_[static_cast<size_t>(iy) * width_ + ix] = d[iy];
    }
  }
  const double res2 = resolution_ * resolution_;
  for (int iy = 0; iy < height_; ++iy) {
    for (int ix = 0; ix < width_; ++ix) {
      f[ix] = dist2_[static_cast<size_t>(iy) * width_ + ix];
    }
    dt1d(f.data(), width_, d.data(), v.data(), z.data());
    for (int ix = 0; ix < width_; ++ix) {
      dist2_[static_cast<size_t>(iy) * width_ + ix] = d[ix] * res2;
    }
  }
}

bool CollisionChecker::exact_scan(double x, double y) const {
  const double r2 = radius_ * radius_;
  const auto index_of = [this](double w, double o) {
    return static_cast<int>(std::floor((w - o) / resolution_));
  };
  const int ix0 = index_of(x - radius_, origin_x_) - 1;
  const int ix1 = index_of(x + radius_, origin_x_) + 1;
  const int iy0 = index_of(y - radius_, origin_y_) - 1;
  const int iy1 = index_of(y + radius_, origin_y_) + 1;
  for (int iy = iy0; iy <= iy1; ++iy) {
    const double dy = origin_y_ + (iy + 0.5) * resolution_ - y;
    for (int ix = ix0; ix <= ix1; ++ix) {
      const double dx = origin_x_ + (ix + 0.5) * resolution_ - x;
      if (dx * dx + dy * dy > r2) {
        continue;
      }
      const bool inside = ix >= 0 && iy >= 0 && ix < width_ && iy < height_;
      if (!inside) {
        if (unknown_is_lethal_) {
          return true;
        }
        continue;
      }
      if (lethal_[static_cast<size_t>(iy) * width_ + ix]) {
        return true;
      }
    }
  }
  return false;
}

bool CollisionChecker::in_collision(double x, double y) const {
  if (unknown_is_lethal_) {
    // Cells beyond the grid edge count as unknown; fall back to the exact
    // scan whenever the footprint could reach one of their centers.
    const double edge = std::min(
        std::min(x - origin_x_, origin_x_ + width_ * resolution_ - x),
        std::min(y - origin_y_, origin_y_ + height_ * resolution_ - y));
    if (edge < radius_ + resolution_) {
      return exact_scan(x, y);
    }
  }
  const int ix = static_cast<int>(std::floor((x - origin_x_) / resolution_));
  const int iy = static_cast<int>(std::floor((y - origin_y_) / resolution_));
  if (ix < 0 || iy < 0 || ix >= width_ || iy >= height_) {
    return exact_scan(x, y);
  }
  if (!any_lethal_ && !unknown_is_lethal_) {
    return false;
  }
  const double d2 = dist2_[static_cast<size_t>(iy) * width_ + ix];
  // The query point sits within half a cell diagonal of its cell center, so
  // the transform value brackets the true point-to-lethal distance.
  const double slack = 0.5 * resolution_ * 1.4142135623730951 + 1e-12;
  const double upper = radius_ + slack;
  if (d2 > upper * upper) {
    return false;
  }
  if (radius_ > slack) {
    const double lower = radius_ - slack;
    if (d2 < lower * lower) {
      return true;
    }
  }
  return exact_scan(x, y);
}

std::string serialize_grid(const OccupancyGrid& grid) {
  std::ostringstream out;
  out << "logmppi-grid 1\n" << grid.width() << ' ' << grid.height() << '\n';
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", grid.resolution());
  out << buf << '\n';
  std::snprintf(buf, sizeof(buf), "%a", grid.origin_x());
  out << buf << ' ';
  std::snprintf(buf, sizeof(buf), "%a", grid.origin_y());
  out << buf << '\n';
  for (int iy = 0; iy < grid.height(); ++iy) {
    for (int ix = 0; ix < grid.width(); ++ix) {
      out << cell_to_char(grid.at(ix, iy));
    }
    out << '\n';
  }
  return out.str();
}

OccupancyGrid parse_grid(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "logmppi-grid" || version != 1) {
    throw std::invalid_argument("not a recognized grid header");
  }
  int width = 0;
  int height = 0;
  std::string res_s, ox_s, oy_s;
  in >> width >> height >> res_s >> ox_s >> oy_s;
  if (!in) {
    throw std::invalid_argument("truncated grid header");
  }
  // std::strtod round-trips the hexfloat fields exactly.
  const double res = std::strtod(res_s.c_str(), nullptr);
  const double ox = std::strtod(ox_s.c_str(), nullptr);
  const double oy = std::strtod(oy_s.c_str(), nullptr);
  OccupancyGrid grid(width, height, res, ox, oy, CellState::kUnknown);
  std::string row;
  for (int iy = 0; iy < height; ++iy) {
    in >> row;
    if (!in || static_cast<int>(row.size()) != width) {
      throw std::invalid_argument("grid body does not match header dimensions");
    }
    for (int ix = 0; ix < width; ++ix) {
      grid.set(ix, iy, char_to_cell(row[static_cast<size_t>(ix)]));
    }
  }
  return grid;
}

}  // namespace logmppi
