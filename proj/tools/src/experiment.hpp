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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace logmppi::bench {

// One scheme's completed trial set, as returned by run_experiment. The
// `results` document is deterministic for a given config and seed; `timing`
// holds everything wall-clock dependent.
struct ExperimentOutcome {
  std::vector<RunMetrics> nav_runs;
  std::vector<CartpoleMetrics> cartpole_runs;
  nlohmann::json results;
  nlohmann::json timing;
  std::string table;

  // Percent of successful (navigation) or converged (cartpole) trials.
  double success_rate() const;
};

// Runs config.trials closed-loop trials with a worker pool of config.threads,
// writing into out_dir:
//   config.json             the fully resolved config (re-runnable)
//   results.json            per-run metrics + aggregate, deterministic
//   timing.json             per-run and aggregate control-step timing
//   table.txt / table.csv   the aggregate table, human and machine form
//   runs/run_NNN/           world.json, trajectory.jsonl, timing.jsonl
//   plots/                  rollout_cloud.csv (+ world_map.csv) for
//                           navigation tasks, state_trace.csv for cartpole
ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir);

struct ComparisonOutcome {
  ExperimentOutcome first;
  ExperimentOutcome second;
  PairedComparison paired;  // navigation tasks only
  nlohmann::json results;
  nlohmann::json timing;
  std::string table;
};

// Runs both configs on identical worlds (their seeds must match, as must the
// task and every world/mission/map field) and writes the paired table. The
// layout mirrors run_experiment with runs/a/ and runs/b/ subtrees.
ComparisonOutcome compare_schemes(const ExperimentConfig& a,
                                  const ExperimentConfig& b,
                                  const std::filesystem::path& out_dir);

enum class PlotKind { kRolloutCloud, kStateTrace, kWorldMap };

// Parses a plot kind name; throws ConfigError on anything unknown.
PlotKind parse_plot_kind(const std::string& name);

// Emits one CSV from an existing artifact directory. `which` selects the
// side of a comparison ("a" or "b"); leave empty for run_experiment output.
// `run_index` picks the trial for per-run kinds (state_trace, world_map).
void emit_plot_data(const std::filesystem::path& artifact_dir, PlotKind kind,
                    int run_index, const std::string& which,
                    const std::filesystem::path& out_csv);

}  // namespace logmppi::bench
