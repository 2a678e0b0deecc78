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

#include "logmppi/sim.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "logmppi/rng.hpp"

namespace logmppi {
namespace {

TimingStats timing_from(std::vector<double> millis) {
  TimingStats stats;
  if (millis.empty()) return stats;
  double sum = 0.0;
  for (const double t : millis) {
    sum += t;
    stats.max_ms = std::max(stats.max_ms, t);
  }
  stats.mean_ms = sum / static_cast<double>(millis.size());
  std::sort(millis.begin(), millis.end());
  const size_t n = millis.size();
  stats.median_ms = (n % 2 == 1) ? millis[n / 2]
                                 : 0.5 * (millis[n / 2 - 1] + millis[n / 2]);
  return stats;
}

bool goal_reached(const DiffDriveState& state, const Pose2& goal,
                  const MissionSpec& mission) {
  if (distance(state.x, state.y, goal.x, goal.y) > mission.position_tolerance) {
    return false;
  }
  return std::abs(wrap_angle(state.heading - goal.heading)) <=
         mission.heading_tolerance;
}

double route_length(const MissionSpec& mission) {
  double total = 0.0;
  double x = mission.start.x;
  double y = mission.start.y;
  for (const Pose2& goal : mission.goals) {
    total += distance(x, y, goal.x, goal.y);
    x = goal.x;
    y = goal.y;
  }
  return total;
}

void accumulate(const std::vector<double>& values, double& mean, double& sd) {
  mean = 0.0;
  sd = 0.0;
  if (values.empty()) return;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() < 2) return;
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace

RunMetrics simulate_mission(const WorldSpec& world_initial,
                            const NavigationTask& task,
                            const ControllerConfig& controller_cfg,
                            std::uint64_t seed, const TickObserver& observer) {
  if (task.mission.goals.empty()) {
    throw std::invalid_argument("mission needs at least one goal");
  }
  if (!(task.mission.v_des > 0.0) || !(task.mission.position_tolerance > 0.0) ||
      !(task.mission.heading_tolerance > 0.0)) {
    throw std::invalid_argument("mission tolerances and v_des must be positive");
  }
  if (!(task.dt > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }

  WorldSpec world = world_initial;
  const MissionSpec& mission = task.mission;

  RunMetrics metrics;
  metrics.straight_line_length = route_length(mission);
  const double timeout_s =
      std::max(5.0, mission.timeout_scale * metrics.straight_line_length /
                        mission.v_des);
  const long max_ticks = static_cast<long>(std::ceil(timeout_s / task.dt));

  auto kernel = std::make_shared<DiffDriveKernel>(
      task.dt, QuadraticStateCost{task.q_diag, mission.goals.front()},
      controller_cfg.cost, task.terminal_state_cost);
  MppiController controller(controller_cfg, kernel);

  // In known-map mode the whole box is rasterized once, with a margin so
  // rollouts straying outside still see free space instead of unknown.
  std::optional<CollisionChecker> known_checker;
  if (task.map.mode == MapMode::kKnown) {
    const double res = task.map.grid.resolution;
    const double margin = task.map.known_map_margin;
    const int wcells =
        static_cast<int>(std::ceil((world.extent_x + 2.0 * margin) / res));
    const int hcells =
        static_cast<int>(std::ceil((world.extent_y + 2.0 * margin) / res));
    OccupancyGrid grid = rasterize_discs(world_discs(world), -margin, -margin,
                                         wcells, hcells, res);
    grid = inflate(grid, task.map.inflation);
    known_checker.emplace(grid, task.map.footprint, task.map.unknown_is_lethal);
    kernel->set_map(&*known_checker);
  }

  DiffDriveState state{mission.start.x, mission.start.y, mission.start.heading};
  const Disc robot_at_start{state.x, state.y, task.map.footprint.radius};
  for (const Disc& d : world_discs(world)) {
    if (discs_overlap(robot_at_start, d)) {
      metrics.crashed = true;
      return metrics;
    }
  }

  size_t goal_idx = 0;
  std::vector<double> step_millis;
  std::optional<CollisionChecker> sensed_checker;
  while (true) {
    while (goal_idx < mission.goals.size() &&
           goal_reached(state, mission.goals[goal_idx], mission)) {
      ++goal_idx;
      metrics.goals_reached = static_cast<int>(goal_idx);
      if (goal_idx < mission.goals.size()) {
        kernel->set_goal(mission.goals[goal_idx]);
      }
    }
    if (goal_idx == mission.goals.size()) {
      metrics.success = true;
      break;
    }
    if (metrics.ticks >= max_ticks) {
      metrics.timed_out = true;
      break;
    }

    if (task.map.mode == MapMode::kSensed) {
      OccupancyGrid grid =
          build_from_world(world_discs(world),
                           Pose2{state.x, state.y, state.heading},
                           task.map.grid, task.map.sensor);
      grid = inflate(grid, task.map.inflation);
      sensed_checker.emplace(grid, task.map.footprint,
                             task.map.unknown_is_lethal);
      kernel->set_map(&*sensed_checker);
    }

    StepDiagnostics diagnostics;
    Eigen::VectorXd applied;
    try {
      applied = controller.control_step(
          Eigen::Vector3d(state.x, state.y, state.heading),
          mix_seed(seed, static_cast<std::uint64_t>(metrics.ticks)),
          &diagnostics);
    } catch (const std::exception&) {
      metrics.controller_failed = true;
      break;
    }
    if (!applied.allFinite()) {
      metrics.controller_failed = true;
      break;
    }
    step_millis.push_back(diagnostics.millis);

    const DiffDriveState previous = state;
    state = diff_drive_step(state, applied[0], applied[1], task.dt);
    metrics.path_length += distance(previous.x, previous.y, state.x, state.y);
    ++metrics.ticks;

    advance_agents(world, task.dt);

    const Disc robot{state.x, state.y, task.map.footprint.radius};
    for (const Disc& d : world_discs(world)) {
      if (discs_overlap(robot, d)) {
        metrics.crashed = true;
        break;
      }
    }

    if (observer) {
      TickRecord record;
      record.tick = metrics.ticks;
      record.t = static_cast<double>(metrics.ticks) * task.dt;
      record.state = state;
      record.applied = applied;
      record.diagnostics = diagnostics;
      record.world = &world;
      observer(record);
    }
    if (metrics.crashed) {
      break;
    }
  }

  metrics.duration_s = static_cast<double>(metrics.ticks) * task.dt;
  metrics.average_speed =
      metrics.ticks > 0 ? metrics.path_length / metrics.duration_s : 0.0;
  metrics.timing = timing_from(std::move(step_millis));
  return metrics;
}

CartpoleMetrics simulate_cartpole(const ControllerConfig& controller_cfg,
                                  const CartpoleConfig& model,
                                  const CartpoleRunOptions& options,
                                  std::uint64_t seed,
                                  const CartpoleTickObserver& observer) {
  if (!(options.duration_s > 0.0)) {
    throw std::invalid_argument("duration_s must be positive");
  }

  auto kernel = std::make_shared<CartpoleKernel>(model, controller_cfg.cost);
  MppiController controller(controller_cfg, kernel);

  CartpoleMetrics metrics;
  const long total_ticks = std::lround(options.duration_s / model.dt);
  CartpoleState state{0.0, 0.0, 0.0, 0.0};
  std::vector<double> abs_x;
  std::vector<double> angle_error;
  std::vector<double> step_millis;
  abs_x.reserve(static_cast<size_t>(total_ticks));
  angle_error.reserve(static_cast<size_t>(total_ticks));

  for (long tick = 0; tick < total_ticks; ++tick) {
    StepDiagnostics diagnostics;
    Eigen::VectorXd applied;
    try {
      applied = controller.control_step(
          Eigen::Vector4d(state.x, state.x_dot, state.theta, state.theta_dot),
          mix_seed(seed, static_cast<std::uint64_t>(tick)), &diagnostics);
    } catch (const std::exception&) {
      metrics.controller_failed = true;
      break;
    }
    if (!applied.allFinite()) {
      metrics.controller_failed = true;
      break;
    }
    step_millis.push_back(diagnostics.millis);

    state = cartpole_step(model, state, applied[0]);
    ++metrics.ticks;
    abs_x.push_back(std::abs(state.x));
    angle_error.push_back(std::abs(wrap_angle(state.theta - std::numbers::pi)));

    if (observer) {
      CartpoleTickRecord record;
      record.tick = metrics.ticks;
      record.t = static_cast<double>(metrics.ticks) * model.dt;
      record.state = state;
      record.force = applied[0];
      record.diagnostics = diagnostics;
      observer(record);
    }
  }

  // A run that stopped early (controller failure) cannot have converged.
  if (metrics.ticks == total_ticks && metrics.ticks > 0) {
    long first_settled = -1;
    for (long i = metrics.ticks - 1; i >= 0; --i) {
      const bool settled = abs_x[static_cast<size_t>(i)] < options.settle_position &&
                           angle_error[static_cast<size_t>(i)] < options.settle_angle;
      if (!settled) break;
      first_settled = i;
    }
    if (first_settled >= 0) {
      metrics.converged = true;
      metrics.convergence_time_s =
          static_cast<double>(first_settled + 1) * model.dt;
    }
  }

  double steady_x_sum = 0.0;
  double steady_angle_sum = 0.0;
  long steady_count = 0;
  for (long i = 0; i < metrics.ticks; ++i) {
    const double t = static_cast<double>(i + 1) * model.dt;
    if (t < options.steady_window_start_s) continue;
    steady_x_sum += abs_x[static_cast<size_t>(i)];
    steady_angle_sum += angle_error[static_cast<size_t>(i)];
    ++steady_count;
  }
  if (steady_count > 0) {
    metrics.steady_mean_abs_x = steady_x_sum / static_cast<double>(steady_count);
    metrics.steady_mean_angle_error =
        steady_angle_sum / static_cast<double>(steady_count);
  }
  metrics.timing = timing_from(std::move(step_millis));
  return metrics;
}

SchemeSummary summarize_runs(const std::vector<RunMetrics>& runs) {
  SchemeSummary summary;
  summary.tasks = static_cast<int>(runs.size());
  std::vector<double> lengths;
  std::vector<double> speeds;
  std::vector<double> times;
  for (const RunMetrics& run : runs) {
    if (run.success) {
      ++summary.successes;
      lengths.push_back(run.path_length);
      speeds.push_back(run.average_speed);
    }
    if (run.crashed) ++summary.crashes;
    if (run.ticks > 0) times.push_back(run.timing.mean_ms);
  }
  if (summary.tasks > 0) {
    summary.success_rate =
        100.0 * static_cast<double>(summary.successes) / summary.tasks;
  }
  accumulate(lengths, summary.length_mean, summary.length_sd);
  accumulate(speeds, summary.speed_mean, summary.speed_sd);
  accumulate(times, summary.time_mean_ms, summary.time_sd_ms);
  return summary;
}

PairedComparison aggregate_metrics(const std::vector<RunMetrics>& first,
                                   const std::vector<RunMetrics>& second) {
  if (first.size() != second.size()) {
    throw std::invalid_argument(
        "paired aggregation needs index-aligned run lists of equal size");
  }
  PairedComparison comparison;
  comparison.first = summarize_runs(first);
  comparison.second = summarize_runs(second);

  // Length and speed columns follow the joint-success protocol: only tasks
  // both schemes completed contribute, so the averages compare like with
  // like.
  std::vector<double> lengths_a;
  std::vector<double> lengths_b;
  std::vector<double> speeds_a;
  std::vector<double> speeds_b;
  for (size_t i = 0; i < first.size(); ++i) {
    if (!first[i].success || !second[i].success) continue;
    ++comparison.jointly_successful;
    lengths_a.push_back(first[i].path_length);
    lengths_b.push_back(second[i].path_length);
    speeds_a.push_back(first[i].average_speed);
    speeds_b.push_back(second[i].average_speed);
    if (first[i].path_length < second[i].path_length) {
      ++comparison.first.shorter_paths;
    } else if (second[i].path_length < first[i].path_length) {
      ++comparison.second.shorter_paths;
    } else {
      ++comparison.length_ties;
    }
  }
  accumulate(lengths_a, comparison.first.length_mean, comparison.first.length_sd);
  accumulate(lengths_b, comparison.second.length_mean, comparison.second.length_sd);
  accumulate(speeds_a, comparison.first.speed_mean, comparison.first.speed_sd);
  accumulate(speeds_b, comparison.second.speed_mean, comparison.second.speed_sd);
  return comparison;
}

}  // namespace logmppi
