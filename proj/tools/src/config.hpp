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
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "logmppi/controller.hpp"
#include "logmppi/models.hpp"
#include "logmppi/sim.hpp"
#include "logmppi/world.hpp"

namespace logmppi::bench {

enum class Task { kCartpole, kForestNav, kUnknownForest, kCorridor };
enum class Scheme { kMppi, kLogMppi };

std::string task_name(Task task);
std::string scheme_name(Scheme scheme);

// Raised on any config problem; the message names the offending field by its
// JSON path (e.g. "controller.lambda: missing").
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One fully resolved experiment description. Optional fields have been
// filled with task defaults and derived quantities (R from lambda and the
// per-channel variance, Q from v_des) so two configs compare field by field.
struct ExperimentConfig {
  Task task = Task::kCartpole;
  Scheme scheme = Scheme::kMppi;
  int trials = 0;
  std::uint64_t seed = 0;
  int threads = 1;  // trial worker pool size

  // Controller. `variance` is the per-channel sampling variance knob: the
  // Gaussian variance for mppi, the normal-factor variance for log_mppi.
  int rollouts = 0;
  int horizon = 0;
  double lambda = 0.0;
  double nu = 0.0;
  Eigen::VectorXd variance;
  double r_scale = 1.0;    // r_diag[i] = r_scale * lambda / sqrt(variance[i])
  Eigen::VectorXd r_diag;  // resolved (possibly an explicit override)
  int sg_order = 3;
  int sg_window = 51;
  bool clamp_after_smoothing = true;
  int controller_threads = 1;

  // Navigation tasks.
  MissionSpec mission;
  double omega_max = 2.0;
  Eigen::Vector3d q_diag{5.0, 5.0, 2.0};  // resolved via the v_des rule
  double dt = 0.02;
  MapOptions map;
  ForestParams forest;
  CorridorParams corridor;

  // Cartpole task.
  CartpoleConfig model;
  CartpoleRunOptions cartpole;
};

// Parses and validates; throws ConfigError naming the field on any problem.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

// The fully resolved config as JSON. parse_config(resolved_json(c)) yields
// the same config, so experiment artifacts embed an exact, re-runnable copy.
nlohmann::json resolved_json(const ExperimentConfig& config);

// Builders for the library-level objects an experiment needs.
ControllerConfig controller_config(const ExperimentConfig& config);
NavigationTask navigation_task(const ExperimentConfig& config);
WorldSpec make_world(const ExperimentConfig& config, std::uint64_t world_seed);

}  // namespace logmppi::bench
