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

#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <utility>

#include "logmppi/rng.hpp"

namespace logmppi::bench {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Seed-space tags keeping the control-noise streams and the plot cloud apart
// from the world-generation stream (which uses the trial index directly).
constexpr std::uint64_t kControlStream = 0x636f6e74726f6cULL;
constexpr std::uint64_t kCloudStream = 0x636c6f7564ULL;

__attribute__((format(printf, 1, 2))) std::string strf(const char* format,
                                                       ...) {
  char buffer[256];
  va_list args;
  va_start(args, format);
  vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

std::string run_name(int index) { return strf("run_%03d", index); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// Shortest-round-trip would do, but a fixed %.17g keeps every emitted double
// exactly recoverable by strtod regardless of the reader.
void csv_number(std::string& line, double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  line += buffer;
}

void mean_sd(const std::vector<double>& values, double& mean, double& sd) {
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

// Runs body(0..trials) on a bounded pool; trial outputs go to disjoint
// slots and paths, so only the error channel needs a lock.
void run_trials(int trials, int workers,
                const std::function<void(int)>& body) {
  if (trials <= 0) return;
  const int pool_size = std::clamp(workers, 1, trials);
  if (pool_size == 1) {
    for (int i = 0; i < trials; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < trials;) {
      try {
        body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(pool_size));
  for (int i = 0; i < pool_size; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

json world_json(const WorldSpec& world) {
  json j;
  j["extent"] = json::array({world.extent_x, world.extent_y});
  j["min_spacing"] = world.min_spacing;
  j["seed"] = world.seed;
  json obstacles = json::array();
  for (const Disc& d : world.obstacles) {
    obstacles.push_back(json::array({d.x, d.y, d.radius}));
  }
  j["obstacles"] = std::move(obstacles);
  json agents = json::array();
  for (const Agent& a : world.agents) {
    agents.push_back(json::array({a.x, a.y, a.vx, a.vy, a.radius}));
  }
  j["agents"] = std::move(agents);
  return j;
}

json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return j;
}

RunMetrics run_nav_trial(const ExperimentConfig& config, int index,
                         const fs::path& run_dir) {
  fs::create_directories(run_dir);
  const std::uint64_t world_seed = mix_seed(config.seed, index);
  const WorldSpec world = make_world(config, world_seed);
  write_text(run_dir / "world.json", world_json(world).dump(2) + "\n");

  std::ofstream trajectory(run_dir / "trajectory.jsonl");
  std::ofstream timing(run_dir / "timing.jsonl");
  if (!trajectory || !timing) {
    throw std::runtime_error("cannot write run logs in " + run_dir.string());
  }
  const TickObserver observer = [&](const TickRecord& record) {
    json line;
    line["tick"] = record.tick;
    line["t"] = record.t;
    line["x"] = record.state.x;
    line["y"] = record.state.y;
    line["heading"] = record.state.heading;
    line["v"] = record.applied[0];
    line["omega"] = record.applied[1];
    line["min_cost"] = record.diagnostics.min_cost;
    line["mean_cost"] = record.diagnostics.mean_cost;
    line["ess"] = record.diagnostics.ess;
    line["nonfinite"] = record.diagnostics.nonfinite;
    trajectory << line.dump() << '\n';
    json tick_ms;
    tick_ms["tick"] = record.tick;
    tick_ms["ms"] = record.diagnostics.millis;
    timing << tick_ms.dump() << '\n';
  };

  const std::uint64_t control_seed =
      mix_seed(config.seed ^ kControlStream, index);
  return simulate_mission(world, navigation_task(config),
                          controller_config(config), control_seed, observer);
}

CartpoleMetrics run_cartpole_trial(const ExperimentConfig& config, int index,
                                   const fs::path& run_dir) {
  fs::create_directories(run_dir);
  std::ofstream trajectory(run_dir / "trajectory.jsonl");
  std::ofstream timing(run_dir / "timing.jsonl");
  if (!trajectory || !timing) {
    throw std::runtime_error("cannot write run logs in " + run_dir.string());
  }
  const CartpoleTickObserver observer = [&](const CartpoleTickRecord& record) {
    json line;
    line["tick"] = record.tick;
    line["t"] = record.t;
    line["x"] = record.state.x;
    line["x_dot"] = record.state.x_dot;
    line["theta"] = record.state.theta;
    line["theta_dot"] = record.state.theta_dot;
    line["u"] = record.force;
    line["min_cost"] = record.diagnostics.min_cost;
    line["mean_cost"] = record.diagnostics.mean_cost;
    line["ess"] = record.diagnostics.ess;
    trajectory << line.dump() << '\n';
    json tick_ms;
    tick_ms["tick"] = record.tick;
    tick_ms["ms"] = record.diagnostics.millis;
    timing << tick_ms.dump() << '\n';
  };

  const std::uint64_t control_seed =
      mix_seed(config.seed ^ kControlStream, index);
  return simulate_cartpole(controller_config(config), config.model,
                           config.cartpole, control_seed, observer);
}

std::vector<RunMetrics> run_nav_set(const ExperimentConfig& config,
                                    const fs::path& runs_dir) {
  std::vector<RunMetrics> runs(static_cast<size_t>(config.trials));
  run_trials(config.trials, config.threads, [&](int i) {
    runs[static_cast<size_t>(i)] =
        run_nav_trial(config, i, runs_dir / run_name(i));
  });
  return runs;
}

std::vector<CartpoleMetrics> run_cartpole_set(const ExperimentConfig& config,
                                              const fs::path& runs_dir) {
  std::vector<CartpoleMetrics> runs(static_cast<size_t>(config.trials));
  run_trials(config.trials, config.threads, [&](int i) {
    runs[static_cast<size_t>(i)] =
        run_cartpole_trial(config, i, runs_dir / run_name(i));
  });
  return runs;
}

json nav_runs_json(const ExperimentConfig& config,
                   const std::vector<RunMetrics>& runs) {
  json rows = json::array();
  for (size_t i = 0; i < runs.size(); ++i) {
    const RunMetrics& m = runs[i];
    json row;
    row["index"] = i;
    row["world_seed"] = mix_seed(config.seed, i);
    row["control_seed"] = mix_seed(config.seed ^ kControlStream, i);
    row["success"] = m.success;
    row["crashed"] = m.crashed;
    row["timed_out"] = m.timed_out;
    row["controller_failed"] = m.controller_failed;
    row["goals_reached"] = m.goals_reached;
    row["ticks"] = m.ticks;
    row["path_length"] = m.path_length;
    row["straight_line_length"] = m.straight_line_length;
    row["duration_s"] = m.duration_s;
    row["average_speed"] = m.average_speed;
    rows.push_back(std::move(row));
  }
  return rows;
}

json nav_summary_json(const SchemeSummary& s, bool paired) {
  json j;
  j["tasks"] = s.tasks;
  j["successes"] = s.successes;
  j["crashes"] = s.crashes;
  j["success_rate"] = s.success_rate;
  j["length_mean"] = s.length_mean;
  j["length_sd"] = s.length_sd;
  j["speed_mean"] = s.speed_mean;
  j["speed_sd"] = s.speed_sd;
  if (paired) j["shorter_paths"] = s.shorter_paths;
  return j;
}

json cartpole_runs_json(const ExperimentConfig& config,
                        const std::vector<CartpoleMetrics>& runs) {
  json rows = json::array();
  for (size_t i = 0; i < runs.size(); ++i) {
    const CartpoleMetrics& m = runs[i];
    json row;
    row["index"] = i;
    row["control_seed"] = mix_seed(config.seed ^ kControlStream, i);
    row["converged"] = m.converged;
    row["controller_failed"] = m.controller_failed;
    row["convergence_time_s"] = m.convergence_time_s;
    row["steady_mean_abs_x"] = m.steady_mean_abs_x;
    row["steady_mean_angle_error"] = m.steady_mean_angle_error;
    row["ticks"] = m.ticks;
    rows.push_back(std::move(row));
  }
  return rows;
}

struct CartpoleSummary {
  int runs = 0;
  int converged = 0;
  double convergence_rate = 0.0;  // percent
  double conv_time_mean = 0.0;
  double conv_time_sd = 0.0;
  double steady_x_mean = 0.0;
  double steady_x_sd = 0.0;
  double steady_angle_mean = 0.0;
  double steady_angle_sd = 0.0;
};

CartpoleSummary summarize_cartpole(const std::vector<CartpoleMetrics>& runs) {
  CartpoleSummary s;
  s.runs = static_cast<int>(runs.size());
  std::vector<double> conv_times;
  std::vector<double> steady_x;
  std::vector<double> steady_angle;
  for (const CartpoleMetrics& m : runs) {
    if (m.converged) {
      ++s.converged;
      conv_times.push_back(m.convergence_time_s);
    }
    if (m.ticks > 0) {
      steady_x.push_back(m.steady_mean_abs_x);
      steady_angle.push_back(m.steady_mean_angle_error);
    }
  }
  if (s.runs > 0) {
    s.convergence_rate = 100.0 * static_cast<double>(s.converged) / s.runs;
  }
  mean_sd(conv_times, s.conv_time_mean, s.conv_time_sd);
  mean_sd(steady_x, s.steady_x_mean, s.steady_x_sd);
  mean_sd(steady_angle, s.steady_angle_mean, s.steady_angle_sd);
  return s;
}

json cartpole_summary_json(const CartpoleSummary& s) {
  json j;
  j["runs"] = s.runs;
  j["converged"] = s.converged;
  j["convergence_rate"] = s.convergence_rate;
  j["convergence_time_mean"] = s.conv_time_mean;
  j["convergence_time_sd"] = s.conv_time_sd;
  j["steady_abs_x_mean"] = s.steady_x_mean;
  j["steady_abs_x_sd"] = s.steady_x_sd;
  j["steady_angle_mean"] = s.steady_angle_mean;
  j["steady_angle_sd"] = s.steady_angle_sd;
  return j;
}

struct TimingRow {
  int index = 0;
  TimingStats stats;
  bool counted = false;  // runs with zero ticks have no timing samples
};

json timing_json(const std::vector<TimingRow>& rows) {
  json j;
  json runs = json::array();
  std::vector<double> means;
  for (const TimingRow& row : rows) {
    json r;
    r["index"] = row.index;
    r["mean_ms"] = row.stats.mean_ms;
    r["median_ms"] = row.stats.median_ms;
    r["max_ms"] = row.stats.max_ms;
    runs.push_back(std::move(r));
    if (row.counted) means.push_back(row.stats.mean_ms);
  }
  j["runs"] = std::move(runs);
  double mean = 0.0;
  double sd = 0.0;
  mean_sd(means, mean, sd);
  j["summary"]["mean_ms"] = mean;
  j["summary"]["sd_ms"] = sd;
  return j;
}

std::vector<TimingRow> nav_timing_rows(const std::vector<RunMetrics>& runs) {
  std::vector<TimingRow> rows;
  rows.reserve(runs.size());
  for (size_t i = 0; i < runs.size(); ++i) {
    rows.push_back(TimingRow{static_cast<int>(i), runs[i].timing,
                             runs[i].ticks > 0});
  }
  return rows;
}

std::vector<TimingRow> cartpole_timing_rows(
    const std::vector<CartpoleMetrics>& runs) {
  std::vector<TimingRow> rows;
  rows.reserve(runs.size());
  for (size_t i = 0; i < runs.size(); ++i) {
    rows.push_back(TimingRow{static_cast<int>(i), runs[i].timing,
                             runs[i].ticks > 0});
  }
  return rows;
}

void timing_summary(const json& timing, double& mean, double& sd) {
  mean = timing.at("summary").at("mean_ms").get<double>();
  sd = timing.at("summary").at("sd_ms").get<double>();
}

// Table rows. l/v statistics come pre-aggregated so the same renderer serves
// both the single-scheme table (own successes) and the paired one (gated on
// joint success, with the N_lmin column filled in).
struct NavTableRow {
  std::string task;
  std::string scheme;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double length_mean = 0.0;
  double length_sd = 0.0;
  std::string n_lmin = "-";
  double speed_mean = 0.0;
  double speed_sd = 0.0;
  double time_mean = 0.0;
  double time_sd = 0.0;
};

std::string nav_table_text(const std::vector<NavTableRow>& rows,
                           const std::string& footer) {
  std::string out =
      strf("%-15s %-9s %7s %5s %8s  %-26s %-16s %s\n", "task", "scheme",
           "trials", "S_T", "S_R[%]", "l_av[m] (N_lmin)", "v_av[m/s]",
           "t_mppi[ms]");
  for (const NavTableRow& r : rows) {
    const std::string length =
        strf("%.2f +/- %.2f (%s)", r.length_mean, r.length_sd,
             r.n_lmin.c_str());
    const std::string speed = strf("%.2f +/- %.2f", r.speed_mean, r.speed_sd);
    const std::string time = strf("%.1f +/- %.1f", r.time_mean, r.time_sd);
    out += strf("%-15s %-9s %7d %5d %8.1f  %-26s %-16s %-s\n", r.task.c_str(),
                r.scheme.c_str(), r.trials, r.successes, r.success_rate,
                length.c_str(), speed.c_str(), time.c_str());
  }
  if (!footer.empty()) out += footer + "\n";
  return out;
}

std::string nav_table_csv(const std::vector<NavTableRow>& rows) {
  std::string out =
      "task,scheme,trials,successes,success_rate,length_mean,length_sd,"
      "n_lmin,speed_mean,speed_sd,t_mppi_mean,t_mppi_sd\n";
  for (const NavTableRow& r : rows) {
    std::string line = r.task + "," + r.scheme + ",";
    line += std::to_string(r.trials) + "," + std::to_string(r.successes) + ",";
    csv_number(line, r.success_rate);
    line += ",";
    csv_number(line, r.length_mean);
    line += ",";
    csv_number(line, r.length_sd);
    line += "," + (r.n_lmin == "-" ? std::string() : r.n_lmin) + ",";
    csv_number(line, r.speed_mean);
    line += ",";
    csv_number(line, r.speed_sd);
    line += ",";
    csv_number(line, r.time_mean);
    line += ",";
    csv_number(line, r.time_sd);
    out += line + "\n";
  }
  return out;
}

struct CartpoleTableRow {
  std::string scheme;
  CartpoleSummary summary;
  double time_mean = 0.0;
  double time_sd = 0.0;
};

std::string cartpole_table_text(const std::vector<CartpoleTableRow>& rows) {
  std::string out =
      strf("%-9s %-9s %7s %5s %8s  %-16s %-20s %-s\n", "task", "scheme",
           "trials", "conv", "rate[%]", "t_conv[s]", "|x|_steady[m]",
           "t_mppi[ms]");
  for (const CartpoleTableRow& r : rows) {
    const std::string conv = strf("%.2f +/- %.2f", r.summary.conv_time_mean,
                                  r.summary.conv_time_sd);
    const std::string steady = strf("%.4f +/- %.4f", r.summary.steady_x_mean,
                                    r.summary.steady_x_sd);
    const std::string time = strf("%.1f +/- %.1f", r.time_mean, r.time_sd);
    out += strf("%-9s %-9s %7d %5d %8.1f  %-16s %-20s %-s\n", "cartpole",
                r.scheme.c_str(), r.summary.runs, r.summary.converged,
                r.summary.convergence_rate, conv.c_str(), steady.c_str(),
                time.c_str());
  }
  return out;
}

std::string cartpole_table_csv(const std::vector<CartpoleTableRow>& rows) {
  std::string out =
      "task,scheme,trials,converged,convergence_rate,conv_time_mean,"
      "conv_time_sd,steady_abs_x_mean,steady_abs_x_sd,t_mppi_mean,t_mppi_sd\n";
  for (const CartpoleTableRow& r : rows) {
    std::string line = "cartpole," + r.scheme + ",";
    line += std::to_string(r.summary.runs) + "," +
            std::to_string(r.summary.converged) + ",";
    csv_number(line, r.summary.convergence_rate);
    line += ",";
    csv_number(line, r.summary.conv_time_mean);
    line += ",";
    csv_number(line, r.summary.conv_time_sd);
    line += ",";
    csv_number(line, r.summary.steady_x_mean);
    line += ",";
    csv_number(line, r.summary.steady_x_sd);
    line += ",";
    csv_number(line, r.time_mean);
    line += ",";
    csv_number(line, r.time_sd);
    out += line + "\n";
  }
  return out;
}

NavTableRow nav_row(const ExperimentConfig& config, const SchemeSummary& s,
                    const std::string& n_lmin, const json& timing) {
  NavTableRow row;
  row.task = task_name(config.task);
  row.scheme = scheme_name(config.scheme);
  row.trials = s.tasks;
  row.successes = s.successes;
  row.success_rate = s.success_rate;
  row.length_mean = s.length_mean;
  row.length_sd = s.length_sd;
  row.n_lmin = n_lmin;
  row.speed_mean = s.speed_mean;
  row.speed_sd = s.speed_sd;
  timing_summary(timing, row.time_mean, row.time_sd);
  return row;
}

void write_rollout_cloud(const ExperimentConfig& config, const fs::path& out) {
  if (config.task == Task::kCartpole) {
    throw ConfigError(
        "plot-data: rollout_cloud needs a navigation task config");
  }
  const ControllerConfig ctrl = controller_config(config);
  auto kernel = std::make_shared<DiffDriveKernel>(
      config.dt, QuadraticStateCost{config.q_diag, config.mission.goals.front()},
      ctrl.cost, true);
  MppiController controller(ctrl, kernel);
  Eigen::MatrixXd nominal = Eigen::MatrixXd::Zero(ctrl.horizon, 2);
  nominal.col(0).setConstant(config.mission.v_des);
  controller.set_nominal(nominal);
  const RolloutBatch batch = controller.generate_rollouts(
      Eigen::Vector3d::Zero(), mix_seed(config.seed, kCloudStream));

  std::ofstream file(out);
  if (!file) throw std::runtime_error("cannot write " + out.string());
  file << "rollout,step,x,y\n";
  const int steps = static_cast<int>(batch.states[0].rows());
  for (int m = 0; m < batch.rollouts(); ++m) {
    for (int k = 0; k < steps; ++k) {
      std::string line = std::to_string(m) + "," + std::to_string(k) + ",";
      csv_number(line, batch.states[0](k, m));
      line += ",";
      csv_number(line, batch.states[1](k, m));
      file << line << '\n';
    }
  }
}

void write_state_trace(const fs::path& trajectory_file, const fs::path& out) {
  std::ifstream in(trajectory_file);
  if (!in) throw ConfigError(trajectory_file.string() + ": cannot open");
  std::ofstream file(out);
  if (!file) throw std::runtime_error("cannot write " + out.string());
  file << "t,x,x_dot,theta,theta_dot,u\n";
  std::string text;
  while (std::getline(in, text)) {
    if (text.empty()) continue;
    const json line = json::parse(text);
    std::string row;
    csv_number(row, line.at("t").get<double>());
    for (const char* key : {"x", "x_dot", "theta", "theta_dot", "u"}) {
      row += ",";
      csv_number(row, line.at(key).get<double>());
    }
    file << row << '\n';
  }
}

void write_world_map(const fs::path& world_file, const fs::path& out) {
  const json world = load_json(world_file);
  std::ofstream file(out);
  if (!file) throw std::runtime_error("cannot write " + out.string());
  file << "kind,x,y,radius,vx,vy\n";
  for (const json& row : world.at("obstacles")) {
    std::string line = "obstacle,";
    csv_number(line, row[0].get<double>());
    line += ",";
    csv_number(line, row[1].get<double>());
    line += ",";
    csv_number(line, row[2].get<double>());
    line += ",0,0";
    file << line << '\n';
  }
  for (const json& row : world.at("agents")) {
    std::string line = "agent,";
    csv_number(line, row[0].get<double>());
    line += ",";
    csv_number(line, row[1].get<double>());
    line += ",";
    csv_number(line, row[4].get<double>());
    line += ",";
    csv_number(line, row[2].get<double>());
    line += ",";
    csv_number(line, row[3].get<double>());
    file << line << '\n';
  }
}

void check_comparable(const ExperimentConfig& a, const ExperimentConfig& b) {
  if (a.task != b.task) {
    throw ConfigError("compare: task mismatch (" + task_name(a.task) +
                      " vs " + task_name(b.task) + ")");
  }
  if (a.seed != b.seed) {
    throw ConfigError(
        "compare: seed mismatch; both schemes must share world seeds");
  }
  if (a.trials != b.trials) {
    throw ConfigError("compare: trials mismatch (" +
                      std::to_string(a.trials) + " vs " +
                      std::to_string(b.trials) + ")");
  }
  const json ja = resolved_json(a);
  const json jb = resolved_json(b);
  for (const char* block : {"mission", "world", "corridor", "map",
                            "cartpole"}) {
    const bool in_a = ja.contains(block);
    const bool in_b = jb.contains(block);
    if (in_a != in_b || (in_a && ja.at(block) != jb.at(block))) {
      throw ConfigError(std::string("compare: ") + block +
                        " blocks differ; the schemes would not see the same "
                        "task");
    }
  }
}

}  // namespace

double ExperimentOutcome::success_rate() const {
  if (!nav_runs.empty()) {
    int successes = 0;
    for (const RunMetrics& m : nav_runs) successes += m.success ? 1 : 0;
    return 100.0 * successes / static_cast<double>(nav_runs.size());
  }
  if (!cartpole_runs.empty()) {
    int converged = 0;
    for (const CartpoleMetrics& m : cartpole_runs) converged += m.converged;
    return 100.0 * converged / static_cast<double>(cartpole_runs.size());
  }
  return 100.0;  // zero trials: nothing failed
}

ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 const fs::path& out_dir) {
  fs::create_directories(out_dir / "runs");
  fs::create_directories(out_dir / "plots");
  write_text(out_dir / "config.json", resolved_json(config).dump(2) + "\n");

  ExperimentOutcome outcome;
  std::string table_csv;
  if (config.task == Task::kCartpole) {
    outcome.cartpole_runs = run_cartpole_set(config, out_dir / "runs");
    outcome.timing = timing_json(cartpole_timing_rows(outcome.cartpole_runs));
    outcome.results["task"] = task_name(config.task);
    outcome.results["scheme"] = scheme_name(config.scheme);
    outcome.results["trials"] = config.trials;
    outcome.results["seed"] = config.seed;
    outcome.results["runs"] =
        cartpole_runs_json(config, outcome.cartpole_runs);
    const CartpoleSummary summary = summarize_cartpole(outcome.cartpole_runs);
    outcome.results["summary"] = cartpole_summary_json(summary);

    std::vector<CartpoleTableRow> rows;
    if (config.trials > 0) {
      CartpoleTableRow row;
      row.scheme = scheme_name(config.scheme);
      row.summary = summary;
      timing_summary(outcome.timing, row.time_mean, row.time_sd);
      rows.push_back(std::move(row));
    }
    outcome.table = cartpole_table_text(rows);
    table_csv = cartpole_table_csv(rows);
    if (config.trials > 0) {
      write_state_trace(out_dir / "runs" / run_name(0) / "trajectory.jsonl",
                        out_dir / "plots" / "state_trace.csv");
    }
  } else {
    outcome.nav_runs = run_nav_set(config, out_dir / "runs");
    outcome.timing = timing_json(nav_timing_rows(outcome.nav_runs));
    outcome.results["task"] = task_name(config.task);
    outcome.results["scheme"] = scheme_name(config.scheme);
    outcome.results["trials"] = config.trials;
    outcome.results["seed"] = config.seed;
    outcome.results["runs"] = nav_runs_json(config, outcome.nav_runs);
    const SchemeSummary summary = summarize_runs(outcome.nav_runs);
    outcome.results["summary"] = nav_summary_json(summary, false);

    std::vector<NavTableRow> rows;
    if (config.trials > 0) {
      rows.push_back(nav_row(config, summary, "-", outcome.timing));
    }
    outcome.table = nav_table_text(rows, "");
    table_csv = nav_table_csv(rows);
    write_rollout_cloud(config, out_dir / "plots" / "rollout_cloud.csv");
    if (config.trials > 0) {
      write_world_map(out_dir / "runs" / run_name(0) / "world.json",
                      out_dir / "plots" / "world_map.csv");
    }
  }

  write_text(out_dir / "results.json", outcome.results.dump(2) + "\n");
  write_text(out_dir / "timing.json", outcome.timing.dump(2) + "\n");
  write_text(out_dir / "table.txt", outcome.table);
  write_text(out_dir / "table.csv", table_csv);
  return outcome;
}

ComparisonOutcome compare_schemes(const ExperimentConfig& a,
                                  const ExperimentConfig& b,
                                  const fs::path& out_dir) {
  check_comparable(a, b);
  fs::create_directories(out_dir / "runs" / "a");
  fs::create_directories(out_dir / "runs" / "b");
  write_text(out_dir / "config_a.json", resolved_json(a).dump(2) + "\n");
  write_text(out_dir / "config_b.json", resolved_json(b).dump(2) + "\n");

  ComparisonOutcome outcome;
  std::string table_csv;
  outcome.results["task"] = task_name(a.task);
  outcome.results["trials"] = a.trials;
  outcome.results["seed"] = a.seed;

  if (a.task == Task::kCartpole) {
    outcome.first.cartpole_runs = run_cartpole_set(a, out_dir / "runs" / "a");
    outcome.second.cartpole_runs = run_cartpole_set(b, out_dir / "runs" / "b");
    outcome.first.timing =
        timing_json(cartpole_timing_rows(outcome.first.cartpole_runs));
    outcome.second.timing =
        timing_json(cartpole_timing_rows(outcome.second.cartpole_runs));
    const CartpoleSummary sa = summarize_cartpole(outcome.first.cartpole_runs);
    const CartpoleSummary sb = summarize_cartpole(outcome.second.cartpole_runs);
    outcome.results["a"]["scheme"] = scheme_name(a.scheme);
    outcome.results["a"]["runs"] =
        cartpole_runs_json(a, outcome.first.cartpole_runs);
    outcome.results["a"]["summary"] = cartpole_summary_json(sa);
    outcome.results["b"]["scheme"] = scheme_name(b.scheme);
    outcome.results["b"]["runs"] =
        cartpole_runs_json(b, outcome.second.cartpole_runs);
    outcome.results["b"]["summary"] = cartpole_summary_json(sb);

    std::vector<CartpoleTableRow> rows;
    if (a.trials > 0) {
      CartpoleTableRow ra;
      ra.scheme = scheme_name(a.scheme);
      ra.summary = sa;
      timing_summary(outcome.first.timing, ra.time_mean, ra.time_sd);
      CartpoleTableRow rb;
      rb.scheme = scheme_name(b.scheme);
      rb.summary = sb;
      timing_summary(outcome.second.timing, rb.time_mean, rb.time_sd);
      rows = {std::move(ra), std::move(rb)};
    }
    outcome.table = cartpole_table_text(rows);
    table_csv = cartpole_table_csv(rows);
  } else {
    outcome.first.nav_runs = run_nav_set(a, out_dir / "runs" / "a");
    outcome.second.nav_runs = run_nav_set(b, out_dir / "runs" / "b");
    outcome.first.timing = timing_json(nav_timing_rows(outcome.first.nav_runs));
    outcome.second.timing =
        timing_json(nav_timing_rows(outcome.second.nav_runs));
    outcome.paired =
        aggregate_metrics(outcome.first.nav_runs, outcome.second.nav_runs);
    outcome.results["a"]["scheme"] = scheme_name(a.scheme);
    outcome.results["a"]["runs"] = nav_runs_json(a, outcome.first.nav_runs);
    outcome.results["a"]["summary"] =
        nav_summary_json(outcome.paired.first, true);
    outcome.results["b"]["scheme"] = scheme_name(b.scheme);
    outcome.results["b"]["runs"] = nav_runs_json(b, outcome.second.nav_runs);
    outcome.results["b"]["summary"] =
        nav_summary_json(outcome.paired.second, true);
    outcome.results["paired"]["jointly_successful"] =
        outcome.paired.jointly_successful;
    outcome.results["paired"]["length_ties"] = outcome.paired.length_ties;

    std::vector<NavTableRow> rows;
    std::string footer;
    if (a.trials > 0) {
      rows.push_back(nav_row(a, outcome.paired.first,
                             std::to_string(outcome.paired.first.shorter_paths),
                             outcome.first.timing));
      rows.push_back(
          nav_row(b, outcome.paired.second,
                  std::to_string(outcome.paired.second.shorter_paths),
                  outcome.second.timing));
      footer = strf("jointly successful: %d, length ties: %d",
                    outcome.paired.jointly_successful,
                    outcome.paired.length_ties);
    }
    outcome.table = nav_table_text(rows, footer);
    table_csv = nav_table_csv(rows);
  }

  outcome.timing["a"] = outcome.first.timing;
  outcome.timing["b"] = outcome.second.timing;
  write_text(out_dir / "results.json", outcome.results.dump(2) + "\n");
  write_text(out_dir / "timing.json", outcome.timing.dump(2) + "\n");
  write_text(out_dir / "table.txt", outcome.table);
  write_text(out_dir / "table.csv", table_csv);
  return outcome;
}

PlotKind parse_plot_kind(const std::string& name) {
  if (name == "rollout_cloud") return PlotKind::kRolloutCloud;
  if (name == "state_trace") return PlotKind::kStateTrace;
  if (name == "world_map") return PlotKind::kWorldMap;
  throw ConfigError(
      "plot-data: unknown kind \"" + name +
      "\" (expected one of rollout_cloud, state_trace, world_map)");
}

void emit_plot_data(const fs::path& artifact_dir, PlotKind kind,
                    int run_index, const std::string& which,
                    const fs::path& out_csv) {
  if (!which.empty() && which != "a" && which != "b") {
    throw ConfigError("plot-data: --which must be a or b");
  }
  if (run_index < 0) throw ConfigError("plot-data: run index must be >= 0");
  const fs::path config_file =
      artifact_dir /
      (which.empty() ? std::string("config.json") : "config_" + which + ".json");
  const fs::path runs_dir =
      which.empty() ? artifact_dir / "runs" : artifact_dir / "runs" / which;

  if (out_csv.has_parent_path()) fs::create_directories(out_csv.parent_path());
  const ExperimentConfig config = parse_config(load_json(config_file));
  switch (kind) {
    case PlotKind::kRolloutCloud:
      write_rollout_cloud(config, out_csv);
      return;
    case PlotKind::kStateTrace:
      if (config.task != Task::kCartpole) {
        throw ConfigError("plot-data: state_trace needs a cartpole run");
      }
      write_state_trace(runs_dir / run_name(run_index) / "trajectory.jsonl",
                        out_csv);
      return;
    case PlotKind::kWorldMap:
      if (config.task == Task::kCartpole) {
        throw ConfigError("plot-data: world_map needs a navigation run");
      }
      write_world_map(runs_dir / run_name(run_index) / "world.json", out_csv);
      return;
  }
  throw ConfigError("plot-data: unknown kind");
}

}  // namespace logmppi::bench
