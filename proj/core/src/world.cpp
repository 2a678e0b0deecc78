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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "logmppi/rng.hpp"

namespace logmppi {
namespace {

bool respects_clearances(double x, double y, double obstacle_radius,
                         const std::vector<Disc>& clearances) {
  for (const Disc& zone : clearances) {
    if (distance(x, y, zone.x, zone.y) < zone.radius + obstacle_radius) {
      return false;
    }
  }
  return true;
}

// Bridson's algorithm: a background grid with cells small enough to hold at
// most one sample makes the neighborhood test O(1), and each accepted sample
// seeds up to 30 annulus candidates before retiring.
std::vector<Disc> poisson_disc_fill(const ForestParams& params,
                                    SequentialRng& rng) {
  const double r = params.min_spacing;
  const double cell = r / std::numbers::sqrt2;
  const int nx = std::max(1, static_cast<int>(std::ceil(params.extent_x / cell)));
  const int ny = std::max(1, static_cast<int>(std::ceil(params.extent_y / cell)));
  std::vector<int> grid(static_cast<size_t>(nx) * ny, -1);
  std::vector<Disc> samples;
  std::vector<int> active;

  const auto cell_of = [&](double x, double y) {
    const int ix = std::min(nx - 1, static_cast<int>(x / cell));
    const int iy = std::min(ny - 1, static_cast<int>(y / cell));
    return iy * nx + ix;
  };
  const auto far_from_neighbors = [&](double x, double y) {
    const int ix = std::min(nx - 1, static_cast<int>(x / cell));
    const int iy = std::min(ny - 1, static_cast<int>(y / cell));
    for (int dy = -2; dy <= 2; ++dy) {
      for (int dx = -2; dx <= 2; ++dx) {
        const int jx = ix + dx;
        const int jy = iy + dy;
        if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
        const int s = grid[static_cast<size_t>(jy) * nx + jx];
        if (s >= 0 && distance(x, y, samples[s].x, samples[s].y) < r) {
          return false;
        }
      }
    }
    return true;
  };
  const auto accept = [&](double x, double y) {
    grid[static_cast<size_t>(cell_of(x, y))] = static_cast<int>(samples.size());
    samples.push_back({x, y, params.obstacle_radius});
    active.push_back(static_cast<int>(samples.size()) - 1);
  };

  bool seeded = false;
  for (int attempt = 0; attempt < 1000 && !seeded; ++attempt) {
    const double x = rng.uniform_in(0.0, params.extent_x);
    const double y = rng.uniform_in(0.0, params.extent_y);
    if (respects_clearances(x, y, params.obstacle_radius, params.clearances)) {
      accept(x, y);
      seeded = true;
    }
  }
  if (!seeded) {
    throw std::runtime_error(
        "forest generation failed: no obstacle position respects the clearances");
  }

  while (!active.empty()) {
    const int pick = rng.below(static_cast<int>(active.size()));
    const Disc& base = samples[static_cast<size_t>(active[static_cast<size_t>(pick)])];
    bool placed = false;
    for (int attempt = 0; attempt < 30; ++attempt) {
      // Area-uniform draw from the annulus [r, 2r).
      const double rad = r * std::sqrt(1.0 + 3.0 * rng.next_uniform());
      const double angle = 2.0 * std::numbers::pi * rng.next_uniform();
      const double x = base.x + rad * std::cos(angle);
      const double y = base.y + rad * std::sin(angle);
      if (x < 0.0 || y < 0.0 || x > params.extent_x || y > params.extent_y) {
        continue;
      }
      if (!respects_clearances(x, y, params.obstacle_radius, params.clearances)) {
        continue;
      }
      if (!far_from_neighbors(x, y)) {
        continue;
      }
      accept(x, y);
      placed = true;
      break;
    }
    if (!placed) {
      active[pick] = active.back();
      active.pop_back();
    }
  }
  return samples;
}

std::vector<Disc> density_fill(const ForestParams& params, SequentialRng& rng,
                               double spacing) {
  const long target =
      std::lround(params.density * params.extent_x * params.extent_y);
  std::vector<Disc> samples;
  samples.reserve(static_cast<size_t>(target));
  long attempts = 0;
  const long budget = std::max<long>(1000, 1000 * target);
  while (static_cast<long>(samples.size()) < target) {
    if (++attempts > budget) {
      throw std::runtime_error(
          "forest generation failed: could not reach the requested density");
    }
    const double x = rng.uniform_in(0.0, params.extent_x);
    const double y = rng.uniform_in(0.0, params.extent_y);
    if (!respects_clearances(x, y, params.obstacle_radius, params.clearances)) {
      continue;
    }
    const bool overlaps =
        std::any_of(samples.begin(), samples.end(), [&](const Disc& d) {
          return distance(x, y, d.x, d.y) < spacing;
        });
    if (!overlaps) {
      samples.push_back({x, y, params.obstacle_radius});
    }
  }
  return samples;
}

}  // namespace

WorldSpec generate_forest(const ForestParams& params, std::uint64_t seed) {
  if (!(params.extent_x > 0.0) || !(params.extent_y > 0.0)) {
    throw std::invalid_argument("forest extent must be positive");
  }
  if (!(params.obstacle_radius > 0.0)) {
    throw std::invalid_argument("obstacle_radius must be positive");
  }
  const bool spacing_mode = params.min_spacing > 0.0;
  const bool density_mode = params.density > 0.0;
  if (spacing_mode == density_mode) {
    throw std::invalid_argument(
        "exactly one of min_spacing and density must be positive");
  }

  SequentialRng rng(mix_seed(seed, 0x666f726573740000ull));
  WorldSpec world;
  world.extent_x = params.extent_x;
  world.extent_y = params.extent_y;
  world.seed = seed;
  if (spacing_mode) {
    world.min_spacing = params.min_spacing;
    world.obstacles = poisson_disc_fill(params, rng);
  } else {
    // Trees are only kept from overlapping each other; density, not
    // spacing, is the contract in this mode.
    world.min_spacing = 2.0 * params.obstacle_radius;
    world.obstacles = density_fill(params, rng, world.min_spacing);
  }
  return world;
}

WorldSpec make_corridor(const CorridorParams& params, std::uint64_t seed) {
  if (!(params.length > 0.0) || !(params.width > 0.0)) {
    throw std::invalid_argument("corridor dimensions must be positive");
  }
  if (params.pedestrians < 0) {
    throw std::invalid_argument("pedestrians must be nonnegative");
  }
  if (!(params.wall_disc_spacing > 0.0)) {
    throw std::invalid_argument("wall_disc_spacing must be positive");
  }

  WorldSpec world;
  world.extent_x = params.length;
  world.extent_y = params.width;
  world.seed = seed;
  world.min_spacing = 0.0;

  // Wall centerlines sit one disc radius outside the box so the free space
  // spans the full advertised width.
  const int posts =
      static_cast<int>(std::floor(params.length / params.wall_disc_spacing)) + 1;
  for (int i = 0; i < posts; ++i) {
    const double x = std::min(params.length, i * params.wall_disc_spacing);
    world.obstacles.push_back({x, -params.wall_disc_radius, params.wall_disc_radius});
    world.obstacles.push_back(
        {x, params.width + params.wall_disc_radius, params.wall_disc_radius});
  }

  SequentialRng rng(mix_seed(seed, 0x636f727269646f72ull));
  const double margin = params.pedestrian_radius;
  for (int i = 0; i < params.pedestrians; ++i) {
    Agent agent;
    agent.radius = params.pedestrian_radius;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 1000) {
        throw std::runtime_error(
            "corridor generation failed: no pedestrian position respects the clearances");
      }
      agent.x = rng.uniform_in(margin, params.length - margin);
      agent.y = rng.uniform_in(margin, params.width - margin);
      if (respects_clearances(agent.x, agent.y, agent.radius, params.clearances)) {
        break;
      }
    }
    const double heading = rng.uniform_in(0.0, 2.0 * std::numbers::pi);
    agent.vx = params.pedestrian_speed * std::cos(heading);
    agent.vy = params.pedestrian_speed * std::sin(heading);
    world.agents.push_back(agent);
  }
  return world;
}

void advance_agents(WorldSpec& world, double dt) {
  for (Agent& agent : world.agents) {
    agent.x += agent.vx * dt;
    agent.y += agent.vy * dt;
    const double lo_x = agent.radius;
    const double hi_x = world.extent_x - agent.radius;
    const double lo_y = agent.radius;
    const double hi_y = world.extent_y - agent.radius;
    if (lo_x > hi_x || lo_y > hi_y) {
      // The agent does not fit in the box at all; pin it to the center
      // rather than bouncing forever.
      agent.x = 0.5 * world.extent_x;
      agent.y = 0.5 * world.extent_y;
      continue;
    }
    while (agent.x < lo_x || agent.x > hi_x) {
      if (agent.x < lo_x) {
        agent.x = 2.0 * lo_x - agent.x;
        agent.vx = -agent.vx;
      } else {
        agent.x = 2.0 * hi_x - agent.x;
        agent.vx = -agent.vx;
      }
    }
    while (agent.y < lo_y || agent.y > hi_y) {
      if (agent.y < lo_y) {
        agent.y = 2.0 * lo_y - agent.y;
        agent.vy = -agent.vy;
      } else {
        agent.y = 2.0 * hi_y - agent.y;
        agent.vy = -agent.vy;
      }
    }
  }
}

std::vector<Disc> world_discs(const WorldSpec& world) {
  std::vector<Disc> discs = world.obstacles;
  discs.reserve(discs.size() + world.agents.size());
  for (const Agent& agent : world.agents) {
    discs.push_back({agent.x, agent.y, agent.radius});
  }
  return discs;
}

}  // namespace logmppi
