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
#include <functional>
#include <vector>

#include "logmppi/controller.hpp"
#include "logmppi/costmap.hpp"
#include "logmppi/models.hpp"
#include "logmppi/world.hpp"

namespace logmppi {

// What the robot is asked to do: visit the goals in order, each reached when
// both the position and the wrapped heading error fall inside the
// tolerances. The timeout is proportional to the straight-line route time at
// the commanded speed.
struct MissionSpec {
  Pose2 start;
  std::vector<Pose2> goals;
  double v_des = 1.5;
  double position_tolerance = 0.3;
  double heading_tolerance = 0.35;
  double timeout_scale = 3.0;
};

// How the controller perceives the world. In kSensed mode a robot-centered
// grid is rebuilt from simulated range returns every tick, which is the
// unknown-environment setting; kKnown rasterizes the ground-truth obstacles
// once up front.
enum class MapMode { kKnown, kSensed };

struct MapOptions {
  MapMode mode = MapMode::kSensed;
  GridParams grid;       // local window shape in kSensed mode
  SensorSpec sensor;
  RobotFootprint footprint{0.3};
  double inflation = 0.35;
  bool unknown_is_lethal = false;
  // Extra meters of grid around the world box in kKnown mode, so rollouts
  // that temporarily leave the box still get collision answers.
  double known_map_margin = 8.0;
};

// Full navigation task description handed to simulate_mission.
struct NavigationTask {
  MissionSpec mission;
  MapOptions map;
  Eigen::Vector3d q_diag{5.0, 5.0, 2.0};
  bool terminal_state_cost = true;
  double dt = 0.02;
};

struct TimingStats {
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double max_ms = 0.0;
};

// Outcome of one closed-loop run. average_speed is path length over elapsed
// time, so the box constraint on the applied control bounds it by v_des.
struct RunMetrics {
  bool success = false;
  bool crashed = false;
  bool timed_out = false;
  bool controller_failed = false;
  int goals_reached = 0;
  double path_length = 0.0;
  double straight_line_length = 0.0;
  double duration_s = 0.0;
  double average_speed = 0.0;
  long ticks = 0;
  TimingStats timing;
};

// Everything observable about one control tick, for logging.
struct TickRecord {
  long tick = 0;
  double t = 0.0;
  DiffDriveState state;
  Eigen::VectorXd applied;
  StepDiagnostics diagnostics;
  const WorldSpec* world = nullptr;  // agents already advanced to time t
};
using TickObserver = std::function<void(const TickRecord&)>;

// Runs the receding-horizon loop: sense (or look up) the costmap, take one
// control step, apply the first control to the true dynamics, move the
// agents, then check goal, crash, and timeout. A crash on the true
// trajectory ends the run as a failure; a controller exception is recorded
// as controller_failed rather than propagated.
RunMetrics simulate_mission(const WorldSpec& world, const NavigationTask& task,
                            const ControllerConfig& controller_cfg,
                            std::uint64_t seed,
                            const TickObserver& observer = {});

struct CartpoleRunOptions {
  double duration_s = 12.0;
  double settle_position = 0.1;  // |x| band counted as settled, meters
  double settle_angle = 0.1;     // |angle error from upright|, radians
  double steady_window_start_s = 6.0;
};

struct CartpoleMetrics {
  bool converged = false;
  bool controller_failed = false;
  // Earliest time from which the settle bands hold through the end.
  double convergence_time_s = 0.0;
  double steady_mean_abs_x = 0.0;
  double steady_mean_angle_error = 0.0;
  long ticks = 0;
  TimingStats timing;
};

struct CartpoleTickRecord {
  long tick = 0;
  double t = 0.0;
  CartpoleState state;
  double force = 0.0;
  StepDiagnostics diagnostics;
};
using CartpoleTickObserver = std::function<void(const CartpoleTickRecord&)>;

// Closed-loop swing-up from hanging rest.
CartpoleMetrics simulate_cartpole(const ControllerConfig& controller_cfg,
                                  const CartpoleConfig& model,
                                  const CartpoleRunOptions& options,
                                  std::uint64_t seed,
                                  const CartpoleTickObserver& observer = {});

// Aggregate view of one scheme's runs. Length and speed statistics use the
// sample standard deviation and, in the paired comparison, are restricted to
// tasks both schemes completed.
struct SchemeSummary {
  int tasks = 0;
  int successes = 0;
  int crashes = 0;
  double success_rate = 0.0;  // percent
  double length_mean = 0.0;
  double length_sd = 0.0;
  double speed_mean = 0.0;
  double speed_sd = 0.0;
  // Jointly successful runs where this scheme's path is strictly shorter.
  int shorter_paths = 0;
  double time_mean_ms = 0.0;
  double time_sd_ms = 0.0;
};

struct PairedComparison {
  SchemeSummary first;
  SchemeSummary second;
  int jointly_successful = 0;
  int length_ties = 0;
};

// Stats over one scheme alone; length/speed over its own successful runs.
SchemeSummary summarize_runs(const std::vector<RunMetrics>& runs);

// Paired comparison over index-aligned runs (same world per index). Throws
// std::invalid_argument when the lists differ in size.
PairedComparison aggregate_metrics(const std::vector<RunMetrics>& first,
                                   const std::vector<RunMetrics>& second);

}  // namespace logmppi
