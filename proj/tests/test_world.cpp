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

#include "logmppi/world.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "logmppi/rng.hpp"

namespace logmppi {
namespace {

ForestParams small_forest_params() {
  ForestParams params;
  params.extent_x = 25.0;
  params.extent_y = 25.0;
  params.min_spacing = 2.0;
  params.clearances = {{1.0, 1.0, 1.0}, {24.0, 24.0, 1.0}};
  return params;
}

TEST(ForestTest, SeedReproducesTheWorld) {
  const ForestParams params = small_forest_params();
  const WorldSpec a = generate_forest(params, 11);
  const WorldSpec b = generate_forest(params, 11);
  EXPECT_TRUE(a == b);

  const WorldSpec c = generate_forest(params, 12);
  EXPECT_FALSE(a == c);
}

TEST(ForestTest, SpacingHoldsForEveryPair) {
  const WorldSpec world = generate_forest(small_forest_params(), 3);
  const auto& obs = world.obstacles;
  // The blue-noise fill lands near 0.10 trees per square meter at 2 m
  // spacing; a collapse of this band signals a broken neighborhood test.
  ASSERT_GE(obs.size(), 85u);
  ASSERT_LE(obs.size(), 120u);
  for (size_t i = 0; i < obs.size(); ++i) {
    for (size_t j = i + 1; j < obs.size(); ++j) {
      EXPECT_GE(distance(obs[i].x, obs[i].y, obs[j].x, obs[j].y), 2.0)
          << "pair " << i << "," << j;
    }
  }
}

TEST(ForestTest, BlueNoiseFillLeavesNoLargeHoles) {
  const ForestParams params = small_forest_params();
  const WorldSpec world = generate_forest(params, 5);
  SequentialRng probe_rng(777);
  int probes = 0;
  for (int i = 0; i < 500; ++i) {
    const double x = probe_rng.uniform_in(0.0, params.extent_x);
    const double y = probe_rng.uniform_in(0.0, params.extent_y);
    const bool in_clearance = std::any_of(
        params.clearances.begin(), params.clearances.end(), [&](const Disc& z) {
          return distance(x, y, z.x, z.y) < z.radius + params.obstacle_radius;
        });
    if (in_clearance) continue;
    ++probes;
    double nearest = 1e30;
    for (const Disc& d : world.obstacles) {
      nearest = std::min(nearest, distance(x, y, d.x, d.y));
    }
    EXPECT_LT(nearest, 2.0 * params.min_spacing)
        << "empty region around (" << x << ", " << y << ")";
  }
  EXPECT_GT(probes, 400);
}

TEST(ForestTest, ClearancesStayEmpty) {
  const ForestParams params = small_forest_params();
  for (const std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const WorldSpec world = generate_forest(params, seed);
    for (const Disc& zone : params.clearances) {
      for (const Disc& d : world.obstacles) {
        EXPECT_GE(distance(d.x, d.y, zone.x, zone.y),
                  zone.radius + params.obstacle_radius);
      }
    }
  }
}

TEST(ForestTest, HugeSpacingYieldsAtMostOneObstacle) {
  ForestParams params;
  params.extent_x = 10.0;
  params.extent_y = 10.0;
  params.min_spacing = 20.0;  // longer than the box diagonal
  const WorldSpec world = generate_forest(params, 8);
  EXPECT_EQ(world.obstacles.size(), 1u);
}

TEST(ForestTest, DensityModeHitsTheTargetCount) {
  ForestParams params;
  params.extent_x = 50.0;
  params.extent_y = 50.0;
  params.density = 0.1;
  params.clearances = {{1.0, 1.0, 1.0}, {49.0, 49.0, 1.0}};
  const WorldSpec world = generate_forest(params, 21);
  EXPECT_EQ(world.obstacles.size(), 250u);
  // Trees never overlap each other.
  const auto& obs = world.obstacles;
  for (size_t i = 0; i < obs.size(); ++i) {
    for (size_t j = i + 1; j < obs.size(); ++j) {
      EXPECT_GE(distance(obs[i].x, obs[i].y, obs[j].x, obs[j].y),
                2.0 * params.obstacle_radius);
    }
  }
}

TEST(ForestTest, RejectsContradictoryParams) {
  ForestParams params;
  params.extent_x = 10.0;
  params.extent_y = 10.0;
  EXPECT_THROW(generate_forest(params, 1), std::invalid_argument);  // no mode

  params.min_spacing = 1.0;
  params.density = 0.1;
  EXPECT_THROW(generate_forest(params, 1), std::invalid_argument);  // both

  params.density = 0.0;
  params.obstacle_radius = 0.0;
  EXPECT_THROW(generate_forest(params, 1), std::invalid_argument);

  params.obstacle_radius = 0.15;
  params.extent_x = 0.0;
  EXPECT_THROW(generate_forest(params, 1), std::invalid_argument);
}

TEST(ForestTest, ImpossibleClearanceThrows) {
  ForestParams params;
  params.extent_x = 10.0;
  params.extent_y = 10.0;
  params.min_spacing = 1.0;
  params.clearances = {{5.0, 5.0, 100.0}};
  EXPECT_THROW(generate_forest(params, 4), std::runtime_error);
}

TEST(CorridorTest, BuildsWallsAndPedestrians) {
  const CorridorParams params;
  const WorldSpec world = make_corridor(params, 17);

  EXPECT_DOUBLE_EQ(world.extent_x, 20.0);
  EXPECT_DOUBLE_EQ(world.extent_y, 6.0);

  const int posts = static_cast<int>(std::floor(20.0 / 0.15)) + 1;
  ASSERT_EQ(world.obstacles.size(), static_cast<size_t>(2 * posts));
  for (const Disc& d : world.obstacles) {
    EXPECT_TRUE(d.y == -0.1 || d.y == 6.1) << d.y;
    EXPECT_GE(d.x, 0.0);
    EXPECT_LE(d.x, 20.0);
    EXPECT_DOUBLE_EQ(d.radius, 0.1);
  }

  ASSERT_EQ(world.agents.size(), 8u);
  for (const Agent& agent : world.agents) {
    EXPECT_NEAR(std::hypot(agent.vx, agent.vy), 0.3, 1e-12);
    EXPECT_GE(agent.x, agent.radius);
    EXPECT_LE(agent.x, 20.0 - agent.radius);
    EXPECT_GE(agent.y, agent.radius);
    EXPECT_LE(agent.y, 6.0 - agent.radius);
    for (const Disc& zone : params.clearances) {
      EXPECT_GE(distance(agent.x, agent.y, zone.x, zone.y),
                zone.radius + agent.radius);
    }
  }
}

TEST(CorridorTest, SeedChangesPedestriansNotWalls) {
  const CorridorParams params;
  const WorldSpec a = make_corridor(params, 1);
  const WorldSpec b = make_corridor(params, 2);
  EXPECT_TRUE(a.obstacles == b.obstacles);
  EXPECT_FALSE(a.agents == b.agents);
  EXPECT_TRUE(a == make_corridor(params, 1));
}

TEST(AgentTest, ZeroVelocityAgentStays) {
  WorldSpec world;
  world.extent_x = 10.0;
  world.extent_y = 10.0;
  world.agents.push_back({4.0, 5.0, 0.0, 0.0, 0.25});
  for (int i = 0; i < 100; ++i) {
    advance_agents(world, 0.02);
  }
  EXPECT_DOUBLE_EQ(world.agents[0].x, 4.0);
  EXPECT_DOUBLE_EQ(world.agents[0].y, 5.0);
}

TEST(AgentTest, ReflectsAtTheBoundary) {
  WorldSpec world;
  world.extent_x = 10.0;
  world.extent_y = 10.0;
  world.agents.push_back({9.8, 5.0, 0.3, 0.0, 0.25});
  advance_agents(world, 1.0);
  // Unreflected position 10.1 folds at the 9.75 inset boundary.
  EXPECT_DOUBLE_EQ(world.agents[0].x, 2.0 * 9.75 - 10.1);
  EXPECT_DOUBLE_EQ(world.agents[0].vx, -0.3);
  EXPECT_DOUBLE_EQ(world.agents[0].y, 5.0);
}

// Closed-form triangle-wave fold of the unreflected coordinate; reflection
// dynamics must follow it exactly up to accumulated rounding.
double fold_coordinate(double p, double lo, double hi) {
  const double span = hi - lo;
  double q = std::fmod(p - lo, 2.0 * span);
  if (q < 0.0) q += 2.0 * span;
  return q <= span ? lo + q : hi - (q - span);
}

TEST(AgentTest, BouncingPathMatchesTriangleWaveOracle) {
  WorldSpec world;
  world.extent_x = 10.0;
  world.extent_y = 6.0;
  const Agent start{8.5, 1.0, 0.3 * std::cos(0.7), 0.3 * std::sin(0.7), 0.25};
  world.agents.push_back(start);

  const double dt = 0.02;
  for (int step = 1; step <= 500; ++step) {
    advance_agents(world, dt);
    const Agent& agent = world.agents[0];
    const double t = step * dt;
    EXPECT_NEAR(agent.x,
                fold_coordinate(start.x + start.vx * t, 0.25, 10.0 - 0.25), 1e-9);
    EXPECT_NEAR(agent.y,
                fold_coordinate(start.y + start.vy * t, 0.25, 6.0 - 0.25), 1e-9);
    EXPECT_DOUBLE_EQ(std::hypot(agent.vx, agent.vy), 0.3 * 1.0);
    EXPECT_GE(agent.x, 0.25);
    EXPECT_LE(agent.x, 9.75);
  }
}

TEST(AgentTest, WorldDiscsAppendAgentsToObstacles) {
  WorldSpec world;
  world.extent_x = 5.0;
  world.extent_y = 5.0;
  world.obstacles = {{1.0, 1.0, 0.15}, {2.0, 3.0, 0.2}};
  world.agents.push_back({4.0, 4.5, 0.1, 0.0, 0.25});

  const std::vector<Disc> discs = world_discs(world);
  ASSERT_EQ(discs.size(), 3u);
  EXPECT_TRUE(discs[0] == world.obstacles[0]);
  EXPECT_TRUE(discs[1] == world.obstacles[1]);
  EXPECT_DOUBLE_EQ(discs[2].x, 4.0);
  EXPECT_DOUBLE_EQ(discs[2].y, 4.5);
  EXPECT_DOUBLE_EQ(discs[2].radius, 0.25);
}

}  // namespace
}  // namespace logmppi
