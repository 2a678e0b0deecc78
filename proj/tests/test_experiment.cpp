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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "config.hpp"
#include "experiment.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace logmppi;
using namespace logmppi::bench;

namespace {

json tiny_nav_json() {
  json j;
  j["task"] = "unknown_forest";
  j["scheme"] = "log_mppi";
  j["trials"] = 2;
  j["seed"] = 42;
  j["controller"] = {{"rollouts", 64},     {"horizon", 30},
                     {"lambda", 0.169},    {"nu", 1200.0},
                     {"variance", {0.002, 0.0022}}, {"sg_window", 11}};
  j["mission"] = {{"start", {1.0, 1.0, 0.0}},
                  {"goals", {{9.0, 9.0, 0.0}}},
                  {"v_des", 1.5}};
  j["world"] = {{"extent", {12.0, 12.0}},
                {"density", 0.02},
                {"clearance_radius", 1.5}};
  j["map"] = {{"grid", {160, 160}}, {"sensor_range", 5.0}};
  return j;
}

json tiny_cartpole_json() {
  json j;
  j["task"] = "cartpole";
  j["scheme"] = "log_mppi";
  j["trials"] = 1;
  j["seed"] = 7;
  j["controller"] = {{"rollouts", 64},   {"horizon", 25},
                     {"lambda", 0.07},   {"nu", 1000.0},
                     {"variance", {0.0225}}, {"sg_order", 3},
                     {"sg_window", 11}};
  j["cartpole"] = {{"duration_s", 1.0}};
  return j;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / name;
  fs::remove_all(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  EXPECT_TRUE(in) << "cannot open " << path;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

TEST(ConfigTest, MissingFieldsAreNamedByPath) {
  json j = tiny_nav_json();
  j["controller"].erase("lambda");
  try {
    parse_config(j);
    FAIL() << "expected a ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("controller.lambda"),
              std::string::npos)
        << e.what();
  }
}

TEST(ConfigTest, UnrecognizedFieldsAreRejected) {
  json j = tiny_nav_json();
  j["controler"] = json::object();
  EXPECT_THROW(parse_config(j), ConfigError);

  json k = tiny_nav_json();
  k["controller"]["rolouts"] = 10;
  try {
    parse_config(k);
    FAIL() << "expected a ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("rolouts"), std::string::npos)
        << e.what();
  }
}

TEST(ConfigTest, BlocksForeignToTheTaskAreRejected) {
  json j = tiny_cartpole_json();
  j["world"] = {{"extent", {10.0, 10.0}}, {"density", 0.1}};
  try {
    parse_config(j);
    FAIL() << "expected a ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("cartpole task"), std::string::npos)
        << e.what();
  }
}

TEST(ConfigTest, VarianceSizeMustMatchTheTask) {
  json j = tiny_cartpole_json();
  j["controller"]["variance"] = {0.0225, 0.01};
  try {
    parse_config(j);
    FAIL() << "expected a ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("controller.variance"),
              std::string::npos)
        << e.what();
  }
}

TEST(ConfigTest, SmoothingWindowMustFitTheHorizon) {
  json j = tiny_nav_json();
  j["controller"]["horizon"] = 10;
  j["controller"]["sg_window"] = 51;  // mirror padding needs horizon > 25
  EXPECT_THROW(parse_config(j), ConfigError);
}

TEST(ConfigTest, DerivesRFromLambdaAndVariance) {
  json j = tiny_nav_json();
  j["scheme"] = "mppi";
  j["controller"]["lambda"] = 0.572;
  j["controller"]["variance"] = {0.023, 0.028};
  const ExperimentConfig config = parse_config(j);
  ASSERT_EQ(config.r_diag.size(), 2);
  EXPECT_NEAR(config.r_diag[0], 3.7717, 1e-3);
  EXPECT_NEAR(config.r_diag[1], 3.4184, 1e-3);

  const ExperimentConfig pole = parse_config(tiny_cartpole_json());
  ASSERT_EQ(pole.r_diag.size(), 1);
  EXPECT_NEAR(pole.r_diag[0], 0.5 * 0.07 / 0.15, 1e-12);
}

TEST(ConfigTest, ResolvedJsonRoundTrips) {
  const ExperimentConfig first = parse_config(tiny_nav_json());
  const json resolved = resolved_json(first);
  const ExperimentConfig second = parse_config(resolved);
  EXPECT_EQ(resolved, resolved_json(second));
  EXPECT_EQ(first.seed, second.seed);
  EXPECT_EQ(first.rollouts, second.rollouts);
  EXPECT_EQ(first.r_diag, second.r_diag);
  EXPECT_EQ(first.mission.goals.size(), second.mission.goals.size());
  EXPECT_EQ(first.forest.density, second.forest.density);
}

TEST(ConfigTest, QDiagFollowsTheDesiredSpeed) {
  json slow = tiny_nav_json();
  slow["mission"]["v_des"] = 1.0;
  EXPECT_EQ(parse_config(slow).q_diag[0], 5.0);

  json fast = tiny_nav_json();
  fast["mission"]["v_des"] = 2.0;
  EXPECT_EQ(parse_config(fast).q_diag[0], 2.5);
  EXPECT_EQ(parse_config(fast).q_diag[2], 2.0);
}

TEST(ExperimentTest, WritesTheFullArtifactTree) {
  const fs::path dir = fresh_dir("artifact_tree");
  const ExperimentConfig config = parse_config(tiny_nav_json());
  const ExperimentOutcome outcome = run_experiment(config, dir);

  for (const char* name :
       {"config.json", "results.json", "timing.json", "table.txt",
        "table.csv"}) {
    EXPECT_TRUE(fs::exists(dir / name)) << name;
  }
  for (const char* run : {"run_000", "run_001"}) {
    for (const char* name :
         {"world.json", "trajectory.jsonl", "timing.jsonl"}) {
      EXPECT_TRUE(fs::exists(dir / "runs" / run / name))
          << run << "/" << name;
    }
  }
  EXPECT_TRUE(fs::exists(dir / "plots" / "rollout_cloud.csv"));
  EXPECT_TRUE(fs::exists(dir / "plots" / "world_map.csv"));

  ASSERT_EQ(outcome.nav_runs.size(), 2u);
  const json results = json::parse(read_file(dir / "results.json"));
  ASSERT_EQ(results.at("runs").size(), 2u);
  EXPECT_EQ(results.at("task"), "unknown_forest");
  EXPECT_EQ(results.at("runs")[0].at("ticks").get<int>(),
            outcome.nav_runs[0].ticks);
  EXPECT_TRUE(results.at("summary").contains("length_mean"));
  EXPECT_FALSE(results.dump().find("ms") != std::string::npos &&
               results.at("summary").contains("mean_ms"))
      << "wall-clock data belongs in timing.json";

  const json timing = json::parse(read_file(dir / "timing.json"));
  ASSERT_EQ(timing.at("runs").size(), 2u);
  EXPECT_GT(timing.at("summary").at("mean_ms").get<double>(), 0.0);
}

TEST(ExperimentTest, ResultsAreByteIdenticalAcrossRepeatsAndThreadCounts) {
  const fs::path dir1 = fresh_dir("repeat_one");
  const fs::path dir2 = fresh_dir("repeat_two");
  ExperimentConfig config = parse_config(tiny_nav_json());
  config.threads = 1;
  run_experiment(config, dir1);
  config.threads = 2;
  run_experiment(config, dir2);

  // config.json records the thread count and so differs; everything the
  // trials produced must not.
  EXPECT_EQ(read_file(dir1 / "results.json"), read_file(dir2 / "results.json"));
  for (const char* run : {"run_000", "run_001"}) {
    EXPECT_EQ(read_file(dir1 / "runs" / run / "world.json"),
              read_file(dir2 / "runs" / run / "world.json"));
    EXPECT_EQ(read_file(dir1 / "runs" / run / "trajectory.jsonl"),
              read_file(dir2 / "runs" / run / "trajectory.jsonl"));
  }
}

TEST(ExperimentTest, ZeroTrialsWriteAnEmptyTable) {
  const fs::path dir = fresh_dir("zero_trials");
  json j = tiny_nav_json();
  j["trials"] = 0;
  const ExperimentOutcome outcome = run_experiment(parse_config(j), dir);

  EXPECT_EQ(outcome.success_rate(), 100.0);
  const std::vector<std::string> table = read_lines(dir / "table.txt");
  ASSERT_EQ(table.size(), 1u) << "expected a header and nothing else";
  const json results = json::parse(read_file(dir / "results.json"));
  EXPECT_TRUE(results.at("runs").empty());
  EXPECT_FALSE(fs::exists(dir / "runs" / "run_000"));
  EXPECT_TRUE(fs::exists(dir / "plots" / "rollout_cloud.csv"));
}

TEST(ExperimentTest, CartpoleArtifactsIncludeAStateTrace) {
  const fs::path dir = fresh_dir("cartpole_run");
  const ExperimentConfig config = parse_config(tiny_cartpole_json());
  const ExperimentOutcome outcome = run_experiment(config, dir);

  ASSERT_EQ(outcome.cartpole_runs.size(), 1u);
  EXPECT_EQ(outcome.cartpole_runs[0].ticks, 50);
  EXPECT_NE(outcome.table.find("cartpole"), std::string::npos);

  const std::vector<std::string> trace =
      read_lines(dir / "plots" / "state_trace.csv");
  ASSERT_EQ(trace.size(), 51u);
  EXPECT_EQ(trace[0], "t,x,x_dot,theta,theta_dot,u");

  // The trace is cut straight from the trajectory log, down to the last bit.
  const std::vector<std::string> log =
      read_lines(dir / "runs" / "run_000" / "trajectory.jsonl");
  ASSERT_EQ(log.size(), 50u);
  const json first = json::parse(log[0]);
  const std::vector<std::string> cells = split_csv(trace[1]);
  ASSERT_EQ(cells.size(), 6u);
  EXPECT_EQ(std::strtod(cells[1].c_str(), nullptr),
            first.at("x").get<double>());
  EXPECT_EQ(std::strtod(cells[5].c_str(), nullptr),
            first.at("u").get<double>());
}

TEST(CompareTest, IdenticalConfigsTieEverywhere) {
  const fs::path dir = fresh_dir("compare_self");
  const ExperimentConfig config = parse_config(tiny_nav_json());
  const ComparisonOutcome outcome = compare_schemes(config, config, dir);

  EXPECT_EQ(outcome.paired.length_ties, outcome.paired.jointly_successful);
  EXPECT_EQ(outcome.paired.first.shorter_paths, 0);
  EXPECT_EQ(outcome.paired.second.shorter_paths, 0);

  const json results = json::parse(read_file(dir / "results.json"));
  EXPECT_EQ(results.at("a").at("runs"), results.at("b").at("runs"));

  // Both sides must have seen the very same worlds.
  EXPECT_EQ(read_file(dir / "runs" / "a" / "run_000" / "world.json"),
            read_file(dir / "runs" / "b" / "run_000" / "world.json"));
  EXPECT_TRUE(fs::exists(dir / "config_a.json"));
  EXPECT_TRUE(fs::exists(dir / "config_b.json"));
}

TEST(CompareTest, MismatchedSeedsAreRejected) {
  const ExperimentConfig a = parse_config(tiny_nav_json());
  json j = tiny_nav_json();
  j["seed"] = 43;
  const ExperimentConfig b = parse_config(j);
  EXPECT_THROW(compare_schemes(a, b, fresh_dir("compare_seed")), ConfigError);
}

TEST(CompareTest, MismatchedWorldsAreRejected) {
  const ExperimentConfig a = parse_config(tiny_nav_json());
  json j = tiny_nav_json();
  j["world"]["density"] = 0.03;
  const ExperimentConfig b = parse_config(j);
  try {
    compare_schemes(a, b, fresh_dir("compare_world"));
    FAIL() << "expected a ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("world"), std::string::npos)
        << e.what();
  }
}

TEST(PlotTest, RolloutCloudHasOneRowPerRolloutStep) {
  const fs::path dir = fresh_dir("cloud_shape");
  json j = tiny_nav_json();
  j["trials"] = 0;
  j["controller"]["rollouts"] = 3;
  j["controller"]["horizon"] = 4;
  j["controller"]["sg_window"] = 3;
  j["controller"]["sg_order"] = 1;
  run_experiment(parse_config(j), dir);

  const std::vector<std::string> lines =
      read_lines(dir / "plots" / "rollout_cloud.csv");
  ASSERT_EQ(lines.size(), 1u + 3u * 5u);
  EXPECT_EQ(lines[0], "rollout,step,x,y");
  const std::vector<std::string> first = split_csv(lines[1]);
  ASSERT_EQ(first.size(), 4u);
  EXPECT_EQ(first[0], "0");
  EXPECT_EQ(first[1], "0");
  // Every rollout starts from the queried state.
  EXPECT_EQ(std::strtod(first[2].c_str(), nullptr), 0.0);
  const std::vector<std::string> last = split_csv(lines.back());
  EXPECT_EQ(last[0], "2");
  EXPECT_EQ(last[1], "4");
}

TEST(PlotTest, WorldMapRoundTripsTheWorldFile) {
  const fs::path dir = fresh_dir("world_map");
  json j = tiny_nav_json();
  j["trials"] = 1;
  run_experiment(parse_config(j), dir);

  const json world =
      json::parse(read_file(dir / "runs" / "run_000" / "world.json"));
  const std::vector<std::string> lines =
      read_lines(dir / "plots" / "world_map.csv");
  const size_t bodies =
      world.at("obstacles").size() + world.at("agents").size();
  ASSERT_EQ(lines.size(), 1u + bodies);
  ASSERT_GT(bodies, 0u) << "the tiny forest should not be empty";

  const std::vector<std::string> cells = split_csv(lines[1]);
  ASSERT_EQ(cells.size(), 6u);
  EXPECT_EQ(cells[0], "obstacle");
  EXPECT_EQ(std::strtod(cells[1].c_str(), nullptr),
            world.at("obstacles")[0][0].get<double>());
  EXPECT_EQ(std::strtod(cells[2].c_str(), nullptr),
            world.at("obstacles")[0][1].get<double>());
  EXPECT_EQ(std::strtod(cells[3].c_str(), nullptr),
            world.at("obstacles")[0][2].get<double>());
}

TEST(PlotTest, EmitPlotDataReadsComparisonSides) {
  const fs::path dir = fresh_dir("plot_sides");
  json j = tiny_nav_json();
  j["trials"] = 1;
  const ExperimentConfig config = parse_config(j);
  compare_schemes(config, config, dir);

  const fs::path out = dir / "plots" / "world_map_b.csv";
  emit_plot_data(dir, PlotKind::kWorldMap, 0, "b", out);
  EXPECT_TRUE(fs::exists(out));

  EXPECT_THROW(emit_plot_data(dir, PlotKind::kWorldMap, 0, "c", out),
               ConfigError);
  EXPECT_THROW(emit_plot_data(dir, PlotKind::kStateTrace, 0, "a", out),
               ConfigError);
}

TEST(PlotTest, UnknownKindsAreRejected) {
  EXPECT_EQ(parse_plot_kind("rollout_cloud"), PlotKind::kRolloutCloud);
  EXPECT_EQ(parse_plot_kind("state_trace"), PlotKind::kStateTrace);
  EXPECT_EQ(parse_plot_kind("world_map"), PlotKind::kWorldMap);
  EXPECT_THROW(parse_plot_kind("histogram"), ConfigError);
}

}  // namespace
