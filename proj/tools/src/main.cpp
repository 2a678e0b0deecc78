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

// Command line front end. Exit codes: 0 the verb ran (and any success gate
// passed), 1 bad usage, bad config, or harness failure, 2 the run finished
// but --min-success-rate was not met.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "experiment.hpp"

namespace {

namespace fs = std::filesystem;
using namespace logmppi::bench;

// LOGMPPI_THREADS overrides the config's trial-pool size; an explicit
// --threads flag still beats it. Returns 0 when the variable is unset.
int env_threads() {
  const char* raw = std::getenv("LOGMPPI_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1 || value > 4096) {
    throw ConfigError("LOGMPPI_THREADS: expected a positive integer, got \"" +
                      std::string(raw) + "\"");
  }
  return static_cast<int>(value);
}

struct Overrides {
  int trials = -1;
  std::int64_t seed = -1;
  int threads = 0;
};

void apply(const Overrides& o, ExperimentConfig& config) {
  if (o.trials >= 0) config.trials = o.trials;
  if (o.seed >= 0) config.seed = static_cast<std::uint64_t>(o.seed);
  if (o.threads > 0) {
    config.threads = o.threads;
  } else if (const int from_env = env_threads(); from_env > 0) {
    config.threads = from_env;
  }
}

int gate(double rate, double required, const std::string& label) {
  if (required < 0.0 || rate >= required) return 0;
  std::fprintf(stderr, "%s success rate %.1f%% is below the required %.1f%%\n",
               label.c_str(), rate, required);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sampling-based MPC benchmark harness"};
  app.require_subcommand(1);

  Overrides overrides;
  double min_success = -1.0;

  std::string run_config;
  std::string run_out = "out";
  CLI::App* run = app.add_subcommand(
      "run", "run one scheme's trial set and write artifacts");
  run->add_option("--config", run_config, "experiment config (JSON)")
      ->required();
  run->add_option("--out", run_out, "artifact directory (default: out)");
  run->add_option("--trials", overrides.trials, "override the trial count");
  run->add_option("--seed", overrides.seed, "override the base seed");
  run->add_option("--threads", overrides.threads,
                  "override the trial worker pool size");
  run->add_option("--min-success-rate", min_success,
                  "exit 2 if the success rate lands below this percentage");

  std::string cmp_config_a;
  std::string cmp_config_b;
  std::string cmp_out = "out";
  CLI::App* compare = app.add_subcommand(
      "compare", "run two schemes on identical worlds and write the paired "
                 "table");
  compare->add_option("--config-a", cmp_config_a, "first scheme config")
      ->required();
  compare->add_option("--config-b", cmp_config_b, "second scheme config")
      ->required();
  compare->add_option("--out", cmp_out, "artifact directory (default: out)");
  compare->add_option("--trials", overrides.trials,
                      "override the trial count for both schemes");
  compare->add_option("--seed", overrides.seed,
                      "override the base seed for both schemes");
  compare->add_option("--threads", overrides.threads,
                      "override the trial worker pool size");
  compare->add_option("--min-success-rate", min_success,
                      "exit 2 if either scheme lands below this percentage");

  std::string plot_dir;
  std::string plot_kind;
  std::string plot_which;
  std::string plot_out;
  int plot_run = 0;
  CLI::App* plot = app.add_subcommand(
      "plot-data", "emit a plotting CSV from an existing artifact directory");
  plot->add_option("--dir", plot_dir, "artifact directory")->required();
  plot->add_option("--kind", plot_kind,
                   "rollout_cloud, state_trace, or world_map")
      ->required();
  plot->add_option("--run", plot_run, "trial index for per-run kinds");
  plot->add_option("--which", plot_which,
                   "a or b, for comparison artifacts");
  plot->add_option("--out", plot_out,
                   "output CSV (default: <dir>/plots/<kind>.csv)");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand(
      "validate-config", "check a config and print its resolved form");
  validate->add_option("--config", validate_path, "experiment config (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      ExperimentConfig config = load_config(run_config);
      apply(overrides, config);
      const ExperimentOutcome outcome = run_experiment(config, run_out);
      std::cout << outcome.table;
      std::cout << "wrote " << run_out << "\n";
      return gate(outcome.success_rate(), min_success,
                  scheme_name(config.scheme));
    }
    if (compare->parsed()) {
      ExperimentConfig a = load_config(cmp_config_a);
      ExperimentConfig b = load_config(cmp_config_b);
      apply(overrides, a);
      apply(overrides, b);
      const ComparisonOutcome outcome = compare_schemes(a, b, cmp_out);
      std::cout << outcome.table;
      std::cout << "wrote " << cmp_out << "\n";
      const int ga =
          gate(outcome.first.success_rate(), min_success, scheme_name(a.scheme));
      const int gb = gate(outcome.second.success_rate(), min_success,
                          scheme_name(b.scheme));
      return ga != 0 ? ga : gb;
    }
    if (plot->parsed()) {
      const PlotKind kind = parse_plot_kind(plot_kind);
      fs::path out = plot_out;
      if (out.empty()) {
        std::string name = plot_kind;
        if (!plot_which.empty()) name += "_" + plot_which;
        out = fs::path(plot_dir) / "plots" / (name + ".csv");
      }
      emit_plot_data(plot_dir, kind, plot_run, plot_which, out);
      std::cout << "wrote " << out.string() << "\n";
      return 0;
    }
    if (validate->parsed()) {
      const ExperimentConfig config = load_config(validate_path);
      std::cout << resolved_json(config).dump(2) << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
