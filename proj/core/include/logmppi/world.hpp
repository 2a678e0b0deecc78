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
#include <vector>

#include "logmppi/geometry.hpp"

namespace logmppi {

// A moving disc-shaped agent (a pedestrian, as far as the benchmarks are
// concerned) travelling at constant speed and reflecting off the world
// boundary.
struct Agent {
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double radius = 0.25;

  friend bool operator==(const Agent&, const Agent&) = default;
};

// A benchmark environment: an axis-aligned box [0, extent_x] x [0, extent_y]
// holding static disc obstacles and optional moving agents.
struct WorldSpec {
  double extent_x = 0.0;
  double extent_y = 0.0;
  std::vector<Disc> obstacles;
  std::vector<Agent> agents;
  // Smallest pairwise obstacle center distance guaranteed by the generator.
  double min_spacing = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const WorldSpec&, const WorldSpec&) = default;
};

struct ForestParams {
  double extent_x = 50.0;
  double extent_y = 50.0;
  double obstacle_radius = 0.15;
  // Exactly one of the following must be positive. min_spacing fills the box
  // with a blue-noise (Poisson-disc) tree pattern at the given minimum
  // center distance; density places round(density * area) trees uniformly.
  double min_spacing = 0.0;
  double density = 0.0;  // trees per square meter
  // Regions kept free of obstacles (start and goal zones). An obstacle disc
  // may not intersect any of these.
  std::vector<Disc> clearances;
};

// Generates a random forest. Deterministic per (params, seed). Throws
// std::invalid_argument on contradictory parameters and std::runtime_error
// when placement repeatedly fails (clearances covering the whole box, or a
// density the spacing constraint cannot accommodate).
WorldSpec generate_forest(const ForestParams& params, std::uint64_t seed);

struct CorridorParams {
  double length = 20.0;  // x extent
  double width = 6.0;    // y extent
  int pedestrians = 8;
  double pedestrian_radius = 0.25;
  double pedestrian_speed = 0.3;
  double wall_disc_radius = 0.1;
  double wall_disc_spacing = 0.15;
  // Pedestrians never start inside these regions.
  std::vector<Disc> clearances{{1.0, 3.0, 1.5}};
};

// Builds a corridor bounded by two rows of wall discs placed just outside
// the long sides, populated with pedestrians at random poses and headings.
// Deterministic per (params, seed); the sampled poses live in the returned
// agents list.
WorldSpec make_corridor(const CorridorParams& params, std::uint64_t seed);

// Moves every agent by one step of constant-velocity motion, reflecting the
// velocity at the world boundary so agents stay inside the box (inset by
// their radius). Static obstacles are ignored; agents pass through them.
void advance_agents(WorldSpec& world, double dt);

// Everything a range sensor or a crash check should see right now: the
// static obstacles followed by the agents as plain discs.
std::vector<Disc> world_discs(const WorldSpec& world);

}  // namespace logmppi
