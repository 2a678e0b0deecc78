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

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "logmppi/rng.hpp"

namespace logmppi {
namespace {

constexpr double kPi = 3.14159265358979323846;

int count_state(const OccupancyGrid& grid, CellState state) {
  int n = 0;
  for (int iy = 0; iy < grid.height(); ++iy) {
    for (int ix = 0; ix < grid.width(); ++ix) {
      if (grid.at(ix, iy) == state) ++n;
    }
  }
  return n;
}

std::set<std::pair<int, int>> occupied_cells(const OccupancyGrid& grid) {
  std::set<std::pair<int, int>> cells;
  for (int iy = 0; iy < grid.height(); ++iy) {
    for (int ix = 0; ix < grid.width(); ++ix) {
      if (grid.at(ix, iy) == CellState::kOccupied) cells.insert({ix, iy});
    }
  }
  return cells;
}

TEST(SensorSpecTest, DefaultBeamCountCoversFullCircle) {
  EXPECT_EQ(SensorSpec{}.beam_count(), 1800);
}

TEST(BuildFromWorldTest, EmptyWorldFreeWithinRangeUnknownBeyond) {
  const GridParams params;  // 240 x 240 at 0.05
  const SensorSpec sensor;  // 6 m range
  const Pose2 center{0.025, 0.025, 0.0};
  const OccupancyGrid grid = build_from_world({}, center, params, sensor);
  EXPECT_EQ(count_state(grid, CellState::kOccupied), 0);
  for (int iy = 0; iy < grid.height(); iy += 3) {
    for (int ix = 0; ix < grid.width(); ix += 3) {
      const double d = distance(grid.cell_center_x(ix), grid.cell_center_y(iy),
                                center.x, center.y);
      if (d <= sensor.max_range - params.resolution) {
        EXPECT_EQ(grid.at(ix, iy), CellState::kFree)
            << "cell (" << ix << "," << iy << ") at range " << d;
      } else if (d >= sensor.max_range + params.resolution) {
        EXPECT_EQ(grid.at(ix, iy), CellState::kUnknown)
            << "cell (" << ix << "," << iy << ") at range " << d;
      }
    }
  }
}

TEST(BuildFromWorldTest, DiscAheadBlocksTheRay) {
  const GridParams params;
  const SensorSpec sensor;
  const Pose2 center{0.025, 0.025, 0.0};
  const std::vector<Disc> world{{1.025, 0.025, 0.1}};
  const OccupancyGrid grid = build_from_world(world, center, params, sensor);

  // First hit along the +x beam lands at x = 0.925.
  const int hit_ix = grid.cell_index_x(0.925);
  const int row = grid.cell_index_y(0.025);
  EXPECT_EQ(grid.at(hit_ix, row), CellState::kOccupied);
  for (double x = 0.125; x < 0.87; x += 0.05) {
    EXPECT_EQ(grid.at(grid.cell_index_x(x), row), CellState::kFree)
        << "expected free at x = " << x;
  }
  // The disc shadows the cells straight behind it.
  EXPECT_EQ(grid.at(grid.cell_index_x(1.2), row), CellState::kUnknown);
  EXPECT_EQ(grid.at(grid.cell_index_x(1.5), row), CellState::kUnknown);
}

TEST(BuildFromWorldTest, OccupiedSetMatchesAnalyticBeamOracle) {
  GridParams params;
  params.width = 60;
  params.height = 60;
  SensorSpec sensor;
  sensor.max_range = 1.2;
  sensor.angular_resolution = 2.0 * kPi / 720.0;
  const Pose2 center{0.4, -0.3, 0.9};

  SequentialRng rng(314);
  std::vector<Disc> world;
  for (int i = 0; i < 10; ++i) {
    const double angle = rng.uniform_in(0.0, 2.0 * kPi);
    const double range = rng.uniform_in(0.3, 1.3);
    world.push_back({center.x + range * std::cos(angle),
                     center.y + range * std::sin(angle),
                     rng.uniform_in(0.05, 0.15)});
  }
  const OccupancyGrid grid = build_from_world(world, center, params, sensor);

  // Oracle: for every beam, intersect analytically with all discs using the
  // closest-approach formulation and map the first hit to its cell.
  std::set<std::pair<int, int>> expected;
  const int beams = 720;
  for (int b = 0; b < beams; ++b) {
    const double a = center.heading - kPi + b * (2.0 * kPi / beams);
    const double dx = std::cos(a);
    const double dy = std::sin(a);
    double best = 1e100;
    for (const Disc& disc : world) {
      const double ox = disc.x - center.x;
      const double oy = disc.y - center.y;
      const double along = ox * dx + oy * dy;
      const double lat2 = ox * ox + oy * oy - along * along;
      const double r2 = disc.radius * disc.radius;
      if (lat2 > r2) continue;
      const double back = std::sqrt(r2 - lat2);
      double t = along - back;
      if (t < 0.0) {
        t = (along + back >= 0.0) ? 0.0 : 1e100;
      }
      best = std::min(best, t);
    }
    if (best <= sensor.max_range) {
      const double hx = center.x + best * dx;
      const double hy = center.y + best * dy;
      const int ix = static_cast<int>(std::floor((hx - grid.origin_x()) / 0.05));
      const int iy = static_cast<int>(std::floor((hy - grid.origin_y()) / 0.05));
      if (ix >= 0 && iy >= 0 && ix < 60 && iy < 60) {
        expected.insert({ix, iy});
      }
    }
  }
  EXPECT_EQ(occupied_cells(grid), expected);
}

TEST(BuildFromWorldTest, RepeatedBuildsAreIdentical) {
  const GridParams params;
  const SensorSpec sensor;
  const std::vector<Disc> world{{1.5, 0.5, 0.2}, {-2.0, 1.0, 0.3}};
  const Pose2 center{0.1, 0.2, 0.4};
  const OccupancyGrid a = build_from_world(world, center, params, sensor);
  const OccupancyGrid b = recenter(center, world, params, sensor);
  EXPECT_TRUE(a == b);
}

TEST(InflateTest, RadiusZeroLeavesGridUnchanged) {
  OccupancyGrid grid(21, 21, 0.05, 0.0, 0.0, CellState::kFree);
  grid.set(10, 10, CellState::kOccupied);
  grid.set(3, 4, CellState::kUnknown);
  EXPECT_TRUE(inflate(grid, 0.0) == grid);
}

TEST(InflateTest, SingleCellGrowsToEuclideanDisc) {
  OccupancyGrid grid(21, 21, 0.05, 0.0, 0.0, CellState::kFree);
  grid.set(10, 10, CellState::kOccupied);
  const OccupancyGrid out = inflate(grid, 2.0 * 0.05);
  EXPECT_EQ(count_state(out, CellState::kOccupied), 1);
  EXPECT_EQ(count_state(out, CellState::kInflated), 12);
  const std::set<std::pair<int, int>> expected_ring{
      {9, 10}, {11, 10}, {10, 9},  {10, 11}, {9, 9},   {9, 11},
      {11, 9}, {11, 11}, {8, 10},  {12, 10}, {10, 8},  {10, 12}};
  for (const auto& [ix, iy] : expected_ring) {
    EXPECT_EQ(out.at(ix, iy), CellState::kInflated)
        << "offset (" << ix - 10 << "," << iy - 10 << ")";
  }
  EXPECT_EQ(out.at(10, 10), CellState::kOccupied);
  EXPECT_EQ(out.at(12, 11), CellState::kFree);
}

TEST(InflateTest, InflationIsIdempotent) {
  SequentialRng rng(77);
  OccupancyGrid grid(50, 50, 0.05, 0.0, 0.0, CellState::kFree);
  for (int i = 0; i < 30; ++i) {
    grid.set(static_cast<int>(rng.below(50)), static_cast<int>(rng.below(50)),
             CellState::kOccupied);
  }
  const OccupancyGrid once = inflate(grid, 0.35);
  const OccupancyGrid twice = inflate(once, 0.35);
  EXPECT_TRUE(once == twice);
}

TEST(IsCollisionTest, FreeRegionAndOccupiedCenter) {
  OccupancyGrid grid(40, 40, 0.05, 0.0, 0.0, CellState::kFree);
  grid.set(20, 20, CellState::kOccupied);
  const RobotFootprint footprint{0.15};
  EXPECT_FALSE(is_collision(grid, 0.4, 0.4, footprint, false));
  EXPECT_TRUE(is_collision(grid, 1.025, 1.025, footprint, false));
}

TEST(IsCollisionTest, TangentToInflatedRing) {
  OccupancyGrid grid(40, 40, 0.05, 0.0, 0.0, CellState::kFree);
  grid.set(20, 20, CellState::kOccupied);
  const OccupancyGrid inflated = inflate(grid, 0.1);
  const RobotFootprint footprint{0.15};
  // Easternmost lethal center sits at (1.125, 1.025).
  EXPECT_FALSE(is_collision(inflated, 1.125 + 0.15 + 0.01, 1.025, footprint, false));
  EXPECT_TRUE(is_collision(inflated, 1.125 + 0.15 - 0.01, 1.025, footprint, false));
}

TEST(IsCollisionTest, OutOfBoundsIsUnknown) {
  OccupancyGrid grid(20, 20, 0.05, 0.0, 0.0, CellState::kFree);
  const RobotFootprint footprint{0.15};
  // Robot just outside the west edge.
  EXPECT_TRUE(is_collision(grid, -0.2, 0.5, footprint, true));
  EXPECT_FALSE(is_collision(grid, -0.2, 0.5, footprint, false));
  // Robot inside, footprint reaching past the edge.
  EXPECT_TRUE(is_collision(grid, 0.05, 0.5, footprint, true));
  EXPECT_FALSE(is_collision(grid, 0.05, 0.5, footprint, false));
  // Robot well inside an all-free grid.
  EXPECT_FALSE(is_collision(grid, 0.5, 0.5, footprint, true));
}

TEST(IsCollisionTest, MonotoneInInflationRadius) {
  SequentialRng rng(888);
  std::vector<Disc> world;
  for (int i = 0; i < 12; ++i) {
    world.push_back({rng.uniform_in(0.5, 4.5), rng.uniform_in(0.5, 4.5),
                     rng.uniform_in(0.1, 0.25)});
  }
  const OccupancyGrid base = rasterize_discs(world, 0.0, 0.0, 100, 100, 0.05);
  const OccupancyGrid small = inflate(base, 0.1);
  const OccupancyGrid large = inflate(base, 0.3);
  const RobotFootprint footprint{0.15};
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform_in(-0.5, 5.5);
    const double y = rng.uniform_in(-0.5, 5.5);
    if (is_collision(small, x, y, footprint, false)) {
      EXPECT_TRUE(is_collision(large, x, y, footprint, false));
    }
  }
}

TEST(RecenterTest, WholeCellShiftMovesOccupiedSetOneIndex) {
  // Known-map rasterization: a pure frame change.
  const std::vector<Disc> world{{1.0, 1.0, 0.15}, {2.2, 0.6, 0.1}};
  const OccupancyGrid a = rasterize_discs(world, 0.0, 0.0, 60, 60, 0.05);
  const OccupancyGrid b = rasterize_discs(world, 0.05, 0.0, 60, 60, 0.05);
  for (int iy = 0; iy < 60; ++iy) {
    for (int ix = 1; ix < 60; ++ix) {
      EXPECT_EQ(a.at(ix, iy), b.at(ix - 1, iy));
    }
  }

  // Sensed mode: the beam straight at a frontal disc hits the same world
  // cell from both poses, so its grid index shifts by exactly one.
  const GridParams params;
  const SensorSpec sensor;
  const std::vector<Disc> frontal{{2.025, 0.025, 0.1}};
  const OccupancyGrid ga =
      build_from_world(frontal, {0.025, 0.025, 0.0}, params, sensor);
  const OccupancyGrid gb =
      build_from_world(frontal, {0.075, 0.025, 0.0}, params, sensor);
  const int ix_a = ga.cell_index_x(1.93);
  const int iy_a = ga.cell_index_y(0.026);
  EXPECT_EQ(ga.at(ix_a, iy_a), CellState::kOccupied);
  EXPECT_EQ(gb.at(ix_a - 1, iy_a), CellState::kOccupied);
  EXPECT_EQ(gb.origin_x(), ga.origin_x() + 0.05);
}

TEST(RecenterTest, ObstacleBeyondRangeRevertsToUnknown) {
  GridParams params;
  SensorSpec sensor;
  sensor.max_range = 4.0;
  const std::vector<Disc> world{{3.525, 0.025, 0.1}};
  const OccupancyGrid near =
      build_from_world(world, {0.025, 0.025, 0.0}, params, sensor);
  EXPECT_GT(count_state(near, CellState::kOccupied), 0);

  const OccupancyGrid far =
      build_from_world(world, {-0.975, 0.025, 0.0}, params, sensor);
  EXPECT_EQ(count_state(far, CellState::kOccupied), 0);
  EXPECT_EQ(far.at(far.cell_index_x(3.43), far.cell_index_y(0.025)),
            CellState::kUnknown);
}

TEST(FrameConsistencyTest, CollisionAnswersAgreeAcrossOrigins) {
  const std::vector<Disc> world{
      {2.0, 2.0, 0.2}, {3.1, 1.4, 0.15}, {1.4, 3.2, 0.25}};
  const OccupancyGrid a =
      inflate(rasterize_discs(world, 0.0, 0.0, 80, 80, 0.05), 0.2);
  const OccupancyGrid b =
      inflate(rasterize_discs(world, 1.0, 0.5, 80, 80, 0.05), 0.2);
  const RobotFootprint footprint{0.15};
  SequentialRng rng(5150);
  for (int i = 0; i < 400; ++i) {
    // Stay a footprint inside both windows so edge effects cannot differ.
    const double x = rng.uniform_in(1.2, 3.8);
    const double y = rng.uniform_in(0.7, 3.8);
    EXPECT_EQ(is_collision(a, x, y, footprint, false),
              is_collision(b, x, y, footprint, false))
        << "pose (" << x << ", " << y << ")";
  }
}

TEST(CollisionCheckerTest, MatchesExactPredicateEverywhere) {
  SequentialRng rng(4096);
  std::vector<Disc> world;
  for (int i = 0; i < 15; ++i) {
    world.push_back({rng.uniform_in(0.0, 5.0), rng.uniform_in(0.0, 5.0),
                     rng.uniform_in(0.08, 0.3)});
  }
  GridParams params;
  params.width = 100;
  params.height = 100;
  SensorSpec sensor;
  sensor.max_range = 2.5;

  const std::vector<OccupancyGrid> grids{
      OccupancyGrid(30, 30, 0.05, 0.0, 0.0, CellState::kFree),
      inflate(rasterize_discs(world, 0.0, 0.0, 100, 100, 0.05), 0.35),
      inflate(build_from_world(world, {2.5, 2.5, 0.3}, params, sensor), 0.35),
  };
  for (const OccupancyGrid& grid : grids) {
    for (const bool unknown_lethal : {false, true}) {
      for (const double radius : {0.14, 0.3}) {
        const RobotFootprint footprint{radius};
        const CollisionChecker checker(grid, footprint, unknown_lethal);
        for (int i = 0; i < 600; ++i) {
          const double x = rng.uniform_in(grid.origin_x() - 1.0,
                                          grid.origin_x() + grid.width() * 0.05 + 1.0);
          const double y = rng.uniform_in(grid.origin_y() - 1.0,
                                          grid.origin_y() + grid.height() * 0.05 + 1.0);
          EXPECT_EQ(checker.in_collision(x, y),
                    is_collision(grid, x, y, footprint, unknown_lethal))
              << "pose (" << x << ", " << y << "), lethal_unknown "
              << unknown_lethal << ", radius " << radius;
        }
      }
    }
  }
}

TEST(SerializationTest, RoundTripsBitExactly) {
  SequentialRng rng(31337);
  OccupancyGrid grid(37, 23, 0.05, -1.8500000000000001, 2.7182818284590451,
                     CellState::kFree);
  for (int i = 0; i < 200; ++i) {
    const int ix = static_cast<int>(rng.below(37));
    const int iy = static_cast<int>(rng.below(23));
    const CellState s = static_cast<CellState>(rng.below(4));
    grid.set(ix, iy, s);
  }
  const std::string text = serialize_grid(grid);
  const OccupancyGrid parsed = parse_grid(text);
  EXPECT_TRUE(parsed == grid);
  EXPECT_EQ(serialize_grid(parsed), text);
}

TEST(SerializationTest, RejectsMalformedInput) {
  EXPECT_THROW(parse_grid("bogus"), std::invalid_argument);
  EXPECT_THROW(parse_grid("logmppi-grid 1\n2 2\n0x1p-4\n0x0p+0 0x0p+0\n..\n.x\n"),
               std::invalid_argument);
  EXPECT_THROW(parse_grid("logmppi-grid 1\n2 2\n0x1p-4\n0x0p+0 0x0p+0\n..\n"),
               std::invalid_argument);
}

TEST(OccupancyGridTest, RejectsBadConstruction) {
  EXPECT_THROW(OccupancyGrid(0, 10, 0.05, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(OccupancyGrid(10, -1, 0.05, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(OccupancyGrid(10, 10, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST(CollisionCheckerTest, RejectsNonPositiveFootprint) {
  const OccupancyGrid grid(10, 10, 0.05, 0.0, 0.0, CellState::kFree);
  EXPECT_THROW(CollisionChecker(grid, RobotFootprint{0.0}, false),
               std::invalid_argument);
}

}  // namespace
}  // namespace logmppi
