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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <vector>

namespace logmppi::bench {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

std::string join(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

const json* find(const json& obj, const char* key) {
  if (!obj.is_object()) return nullptr;
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& path, const char* key) {
  const json* value = find(obj, key);
  if (value == nullptr) fail(join(path, key), "missing");
  return *value;
}

void check_object(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (key == name) {
        known = true;
        break;
      }
    }
    if (!known) fail(join(path, key.c_str()), "unrecognized field");
  }
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

std::uint64_t as_seed(const json& j, const std::string& path) {
  if (!(j.is_number_unsigned() ||
        (j.is_number_integer() && j.get<std::int64_t>() >= 0))) {
    fail(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::vector<double> as_numbers(const json& j, const std::string& path,
                               int expected_size) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  if (expected_size >= 0 && static_cast<int>(j.size()) != expected_size) {
    fail(path, "expected " + std::to_string(expected_size) + " entries");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

double req_number(const json& obj, const std::string& path, const char* key) {
  return as_number(require(obj, path, key), join(path, key));
}

double opt_number(const json& obj, const std::string& path, const char* key,
                  double fallback) {
  const json* value = find(obj, key);
  return value == nullptr ? fallback : as_number(*value, join(path, key));
}

int req_int(const json& obj, const std::string& path, const char* key) {
  return as_int(require(obj, path, key), join(path, key));
}

int opt_int(const json& obj, const std::string& path, const char* key,
            int fallback) {
  const json* value = find(obj, key);
  return value == nullptr ? fallback : as_int(*value, join(path, key));
}

bool opt_bool(const json& obj, const std::string& path, const char* key,
              bool fallback) {
  const json* value = find(obj, key);
  return value == nullptr ? fallback : as_bool(*value, join(path, key));
}

void require_positive(double value, const std::string& path) {
  if (!(value > 0.0)) fail(path, "must be > 0");
}

void require_non_negative(double value, const std::string& path) {
  if (!(value >= 0.0)) fail(path, "must be >= 0");
}

Pose2 as_pose(const json& j, const std::string& path) {
  const std::vector<double> v = as_numbers(j, path, 3);
  return Pose2{v[0], v[1], v[2]};
}

Task parse_task(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  const std::string name = j.get<std::string>();
  if (name == "cartpole") return Task::kCartpole;
  if (name == "forest_nav") return Task::kForestNav;
  if (name == "unknown_forest") return Task::kUnknownForest;
  if (name == "corridor") return Task::kCorridor;
  fail(path,
       "expected one of cartpole, forest_nav, unknown_forest, corridor");
}

Scheme parse_scheme(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  const std::string name = j.get<std::string>();
  if (name == "mppi") return Scheme::kMppi;
  if (name == "log_mppi") return Scheme::kLogMppi;
  fail(path, "expected one of mppi, log_mppi");
}

void parse_controller(const json& root, ExperimentConfig& config) {
  const json& j = require(root, "", "controller");
  const std::string path = "controller";
  check_object(j, path,
               {"rollouts", "horizon", "lambda", "nu", "variance", "r_scale",
                "r_diag", "sg_order", "sg_window", "clamp_after_smoothing",
                "threads"});
  config.rollouts = req_int(j, path, "rollouts");
  config.horizon = req_int(j, path, "horizon");
  config.lambda = req_number(j, path, "lambda");
  require_positive(config.lambda, path + ".lambda");
  config.nu = req_number(j, path, "nu");
  require_positive(config.nu, path + ".nu");

  const int channels = config.task == Task::kCartpole ? 1 : 2;
  const std::vector<double> variance = as_numbers(
      require(j, path, "variance"), path + ".variance", channels);
  config.variance = Eigen::Map<const Eigen::VectorXd>(
      variance.data(), static_cast<int>(variance.size()));
  for (int i = 0; i < config.variance.size(); ++i) {
    const std::string entry =
        path + ".variance[" + std::to_string(i) + "]";
    if (config.scheme == Scheme::kLogMppi) {
      require_positive(config.variance[i], entry);
    } else {
      require_non_negative(config.variance[i], entry);
    }
  }

  config.r_scale = opt_number(j, path, "r_scale",
                              config.task == Task::kCartpole ? 0.5 : 1.0);
  require_positive(config.r_scale, path + ".r_scale");
  if (const json* r = find(j, "r_diag"); r != nullptr) {
    const std::vector<double> values =
        as_numbers(*r, path + ".r_diag", channels);
    config.r_diag = Eigen::Map<const Eigen::VectorXd>(
        values.data(), static_cast<int>(values.size()));
  } else {
    config.r_diag.resize(channels);
    for (int i = 0; i < channels; ++i) {
      if (config.variance[i] <= 0.0) {
        fail(path + ".r_diag",
             "required explicitly when a variance entry is zero");
      }
      config.r_diag[i] =
          config.r_scale * config.lambda / std::sqrt(config.variance[i]);
    }
  }

  const bool is_cartpole = config.task == Task::kCartpole;
  config.sg_order = opt_int(j, path, "sg_order", is_cartpole ? 5 : 3);
  config.sg_window = opt_int(j, path, "sg_window", 51);
  config.clamp_after_smoothing =
      opt_bool(j, path, "clamp_after_smoothing", true);
  config.controller_threads = opt_int(j, path, "threads", 1);
  if (config.controller_threads < 1) fail(path + ".threads", "must be >= 1");
}

void parse_mission(const json& root, ExperimentConfig& config) {
  const json& j = require(root, "", "mission");
  const std::string path = "mission";
  check_object(j, path,
               {"start", "goals", "v_des", "position_tolerance",
                "heading_tolerance", "timeout_scale", "omega_max", "q_diag",
                "dt"});
  config.mission.start = as_pose(require(j, path, "start"), path + ".start");

  const json& goals = require(j, path, "goals");
  if (!goals.is_array() || goals.empty()) {
    fail(path + ".goals", "expected a non-empty array of poses");
  }
  config.mission.goals.clear();
  for (size_t i = 0; i < goals.size(); ++i) {
    config.mission.goals.push_back(
        as_pose(goals[i], path + ".goals[" + std::to_string(i) + "]"));
  }

  config.mission.v_des = req_number(j, path, "v_des");
  require_positive(config.mission.v_des, path + ".v_des");
  config.mission.position_tolerance =
      opt_number(j, path, "position_tolerance", 0.3);
  require_positive(config.mission.position_tolerance,
                   path + ".position_tolerance");
  config.mission.heading_tolerance =
      opt_number(j, path, "heading_tolerance", 0.35);
  require_positive(config.mission.heading_tolerance,
                   path + ".heading_tolerance");
  config.mission.timeout_scale = opt_number(j, path, "timeout_scale", 3.0);
  require_positive(config.mission.timeout_scale, path + ".timeout_scale");
  config.omega_max = opt_number(j, path, "omega_max", 2.0);
  require_positive(config.omega_max, path + ".omega_max");
  config.dt = opt_number(j, path, "dt", 0.02);
  require_positive(config.dt, path + ".dt");

  if (const json* q = find(j, "q_diag"); q != nullptr) {
    const std::vector<double> values = as_numbers(*q, path + ".q_diag", 3);
    config.q_diag = Eigen::Vector3d(values[0], values[1], values[2]);
  } else if (config.mission.v_des <= 1.0) {
    config.q_diag = Eigen::Vector3d(5.0, 5.0, 2.0);
  } else {
    config.q_diag = Eigen::Vector3d(2.5, 2.5, 2.0);
  }
}

void parse_map(const json& root, ExperimentConfig& config) {
  const json* j = find(root, "map");
  const std::string path = "map";
  config.map.mode =
      config.task == Task::kForestNav ? MapMode::kKnown : MapMode::kSensed;
  if (j == nullptr) return;
  check_object(*j, path,
               {"mode", "grid", "resolution", "sensor_range",
                "footprint_radius", "inflation", "unknown_is_lethal",
                "known_map_margin"});
  if (const json* mode = find(*j, "mode"); mode != nullptr) {
    if (!mode->is_string()) fail(path + ".mode", "expected a string");
    const std::string name = mode->get<std::string>();
    if (name == "known") {
      config.map.mode = MapMode::kKnown;
    } else if (name == "sensed") {
      config.map.mode = MapMode::kSensed;
    } else {
      fail(path + ".mode", "expected one of known, sensed");
    }
  }
  if (const json* grid = find(*j, "grid"); grid != nullptr) {
    if (!grid->is_array() || grid->size() != 2) {
      fail(path + ".grid", "expected [width_cells, height_cells]");
    }
    config.map.grid.width = as_int((*grid)[0], path + ".grid[0]");
    config.map.grid.height = as_int((*grid)[1], path + ".grid[1]");
    if (config.map.grid.width < 1 || config.map.grid.height < 1) {
      fail(path + ".grid", "cell counts must be >= 1");
    }
  }
  config.map.grid.resolution =
      opt_number(*j, path, "resolution", config.map.grid.resolution);
  require_positive(config.map.grid.resolution, path + ".resolution");
  config.map.sensor.max_range =
      opt_number(*j, path, "sensor_range", config.map.sensor.max_range);
  require_positive(config.map.sensor.max_range, path + ".sensor_range");
  config.map.footprint.radius =
      opt_number(*j, path, "footprint_radius", config.map.footprint.radius);
  require_positive(config.map.footprint.radius, path + ".footprint_radius");
  config.map.inflation = opt_number(*j, path, "inflation", config.map.inflation);
  require_non_negative(config.map.inflation, path + ".inflation");
  config.map.unknown_is_lethal =
      opt_bool(*j, path, "unknown_is_lethal", config.map.unknown_is_lethal);
  config.map.known_map_margin =
      opt_number(*j, path, "known_map_margin", config.map.known_map_margin);
  require_non_negative(config.map.known_map_margin, path + ".known_map_margin");
}

void parse_forest(const json& root, ExperimentConfig& config) {
  const json& j = require(root, "", "world");
  const std::string path = "world";
  check_object(j, path,
               {"extent", "obstacle_radius", "min_spacing", "density",
                "clearance_radius"});
  const std::vector<double> extent =
      as_numbers(require(j, path, "extent"), path + ".extent", 2);
  require_positive(extent[0], path + ".extent[0]");
  require_positive(extent[1], path + ".extent[1]");
  config.forest.extent_x = extent[0];
  config.forest.extent_y = extent[1];
  config.forest.obstacle_radius =
      opt_number(j, path, "obstacle_radius", 0.15);
  require_positive(config.forest.obstacle_radius, path + ".obstacle_radius");

  const json* spacing = find(j, "min_spacing");
  const json* density = find(j, "density");
  if ((spacing != nullptr) == (density != nullptr)) {
    fail(path, "exactly one of min_spacing and density must be set");
  }
  config.forest.min_spacing = 0.0;
  config.forest.density = 0.0;
  if (spacing != nullptr) {
    config.forest.min_spacing = as_number(*spacing, path + ".min_spacing");
    require_positive(config.forest.min_spacing, path + ".min_spacing");
  } else {
    config.forest.density = as_number(*density, path + ".density");
    require_positive(config.forest.density, path + ".density");
  }

  const double clearance = opt_number(j, path, "clearance_radius", 1.5);
  require_non_negative(clearance, path + ".clearance_radius");
  config.forest.clearances.clear();
  if (clearance > 0.0) {
    config.forest.clearances.push_back(
        Disc{config.mission.start.x, config.mission.start.y, clearance});
    for (const Pose2& goal : config.mission.goals) {
      config.forest.clearances.push_back(Disc{goal.x, goal.y, clearance});
    }
  }
}

void parse_corridor(const json& root, ExperimentConfig& config) {
  config.corridor = CorridorParams{};
  const json* j = find(root, "corridor");
  const std::string path = "corridor";
  double clearance = 1.5;
  if (j != nullptr) {
    check_object(*j, path,
                 {"length", "width", "pedestrians", "pedestrian_radius",
                  "pedestrian_speed", "wall_disc_radius", "wall_disc_spacing",
                  "clearance_radius"});
    config.corridor.length = opt_number(*j, path, "length", 20.0);
    require_positive(config.corridor.length, path + ".length");
    config.corridor.width = opt_number(*j, path, "width", 6.0);
    require_positive(config.corridor.width, path + ".width");
    config.corridor.pedestrians = opt_int(*j, path, "pedestrians", 8);
    if (config.corridor.pedestrians < 0) {
      fail(path + ".pedestrians", "must be >= 0");
    }
    config.corridor.pedestrian_radius =
        opt_number(*j, path, "pedestrian_radius", 0.25);
    require_positive(config.corridor.pedestrian_radius,
                     path + ".pedestrian_radius");
    config.corridor.pedestrian_speed =
        opt_number(*j, path, "pedestrian_speed", 0.3);
    require_non_negative(config.corridor.pedestrian_speed,
                         path + ".pedestrian_speed");
    config.corridor.wall_disc_radius =
        opt_number(*j, path, "wall_disc_radius", 0.1);
    require_positive(config.corridor.wall_disc_radius,
                     path + ".wall_disc_radius");
    config.corridor.wall_disc_spacing =
        opt_number(*j, path, "wall_disc_spacing", 0.15);
    require_positive(config.corridor.wall_disc_spacing,
                     path + ".wall_disc_spacing");
    clearance = opt_number(*j, path, "clearance_radius", 1.5);
    require_non_negative(clearance, path + ".clearance_radius");
  }
  config.corridor.clearances.clear();
  if (clearance > 0.0) {
    config.corridor.clearances.push_back(
        Disc{config.mission.start.x, config.mission.start.y, clearance});
    for (const Pose2& goal : config.mission.goals) {
      config.corridor.clearances.push_back(Disc{goal.x, goal.y, clearance});
    }
  }
}

void parse_cartpole(const json& root, ExperimentConfig& config) {
  config.model = CartpoleConfig{};
  config.cartpole = CartpoleRunOptions{};
  const json* j = find(root, "cartpole");
  if (j == nullptr) return;
  const std::string path = "cartpole";
  check_object(*j, path,
               {"duration_s", "settle_position", "settle_angle",
                "steady_window_start_s", "cart_mass", "pole_mass", "length",
                "gravity", "dt"});
  config.cartpole.duration_s = opt_number(*j, path, "duration_s", 12.0);
  require_positive(config.cartpole.duration_s, path + ".duration_s");
  config.cartpole.settle_position =
      opt_number(*j, path, "settle_position", 0.1);
  require_positive(config.cartpole.settle_position, path + ".settle_position");
  config.cartpole.settle_angle = opt_number(*j, path, "settle_angle", 0.1);
  require_positive(config.cartpole.settle_angle, path + ".settle_angle");
  config.cartpole.steady_window_start_s =
      opt_number(*j, path, "steady_window_start_s", 6.0);
  require_non_negative(config.cartpole.steady_window_start_s,
                       path + ".steady_window_start_s");
  config.model.cart_mass = opt_number(*j, path, "cart_mass", 1.0);
  require_positive(config.model.cart_mass, path + ".cart_mass");
  config.model.pole_mass = opt_number(*j, path, "pole_mass", 0.01);
  require_positive(config.model.pole_mass, path + ".pole_mass");
  config.model.length = opt_number(*j, path, "length", 1.0);
  require_positive(config.model.length, path + ".length");
  config.model.gravity = opt_number(*j, path, "gravity", 9.81);
  require_positive(config.model.gravity, path + ".gravity");
  config.model.dt = opt_number(*j, path, "dt", 0.02);
  require_positive(config.model.dt, path + ".dt");
}

void reject_block(const json& root, const char* key, const char* task) {
  if (find(root, key) != nullptr) {
    fail(key, std::string("not used by the ") + task + " task");
  }
}

json pose_json(const Pose2& pose) {
  return json::array({pose.x, pose.y, pose.heading});
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

std::string task_name(Task task) {
  switch (task) {
    case Task::kCartpole:
      return "cartpole";
    case Task::kForestNav:
      return "forest_nav";
    case Task::kUnknownForest:
      return "unknown_forest";
    case Task::kCorridor:
      return "corridor";
  }
  return "unknown";
}

std::string scheme_name(Scheme scheme) {
  return scheme == Scheme::kMppi ? "mppi" : "log_mppi";
}

ExperimentConfig parse_config(const json& j) {
  check_object(j, "",
               {"task", "scheme", "trials", "seed", "threads", "controller",
                "mission", "world", "corridor", "map", "cartpole"});
  ExperimentConfig config;
  config.task = parse_task(require(j, "", "task"), "task");
  config.scheme = parse_scheme(require(j, "", "scheme"), "scheme");
  config.trials = as_int(require(j, "", "trials"), "trials");
  if (config.trials < 0) fail("trials", "must be >= 0");
  config.seed = as_seed(require(j, "", "seed"), "seed");
  config.threads = opt_int(j, "", "threads", 1);
  if (config.threads < 1) fail("threads", "must be >= 1");

  parse_controller(j, config);

  if (config.task == Task::kCartpole) {
    reject_block(j, "mission", "cartpole");
    reject_block(j, "world", "cartpole");
    reject_block(j, "corridor", "cartpole");
    reject_block(j, "map", "cartpole");
    parse_cartpole(j, config);
  } else {
    reject_block(j, "cartpole", task_name(config.task).c_str());
    parse_mission(j, config);
    parse_map(j, config);
    if (config.task == Task::kCorridor) {
      reject_block(j, "world", "corridor");
      parse_corridor(j, config);
    } else {
      reject_block(j, "corridor", task_name(config.task).c_str());
      parse_forest(j, config);
    }
  }

  // Let the library check the cross-field controller constraints too, so a
  // config that parses is a config that runs.
  try {
    controller_config(config).validate();
  } catch (const std::invalid_argument& e) {
    fail("controller", e.what());
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(j);
}

json resolved_json(const ExperimentConfig& config) {
  json j;
  j["task"] = task_name(config.task);
  j["scheme"] = scheme_name(config.scheme);
  j["trials"] = config.trials;
  j["seed"] = config.seed;
  j["threads"] = config.threads;

  json& c = j["controller"];
  c["rollouts"] = config.rollouts;
  c["horizon"] = config.horizon;
  c["lambda"] = config.lambda;
  c["nu"] = config.nu;
  c["variance"] = vector_json(config.variance);
  c["r_scale"] = config.r_scale;
  c["r_diag"] = vector_json(config.r_diag);
  c["sg_order"] = config.sg_order;
  c["sg_window"] = config.sg_window;
  c["clamp_after_smoothing"] = config.clamp_after_smoothing;
  c["threads"] = config.controller_threads;

  if (config.task == Task::kCartpole) {
    json& p = j["cartpole"];
    p["duration_s"] = config.cartpole.duration_s;
    p["settle_position"] = config.cartpole.settle_position;
    p["settle_angle"] = config.cartpole.settle_angle;
    p["steady_window_start_s"] = config.cartpole.steady_window_start_s;
    p["cart_mass"] = config.model.cart_mass;
    p["pole_mass"] = config.model.pole_mass;
    p["length"] = config.model.length;
    p["gravity"] = config.model.gravity;
    p["dt"] = config.model.dt;
    return j;
  }

  json& m = j["mission"];
  m["start"] = pose_json(config.mission.start);
  json goals = json::array();
  for (const Pose2& goal : config.mission.goals) goals.push_back(pose_json(goal));
  m["goals"] = goals;
  m["v_des"] = config.mission.v_des;
  m["position_tolerance"] = config.mission.position_tolerance;
  m["heading_tolerance"] = config.mission.heading_tolerance;
  m["timeout_scale"] = config.mission.timeout_scale;
  m["omega_max"] = config.omega_max;
  m["q_diag"] = json::array({config.q_diag[0], config.q_diag[1], config.q_diag[2]});
  m["dt"] = config.dt;

  json& g = j["map"];
  g["mode"] = config.map.mode == MapMode::kKnown ? "known" : "sensed";
  g["grid"] = json::array({config.map.grid.width, config.map.grid.height});
  g["resolution"] = config.map.grid.resolution;
  g["sensor_range"] = config.map.sensor.max_range;
  g["footprint_radius"] = config.map.footprint.radius;
  g["inflation"] = config.map.inflation;
  g["unknown_is_lethal"] = config.map.unknown_is_lethal;
  g["known_map_margin"] = config.map.known_map_margin;

  if (config.task == Task::kCorridor) {
    json& w = j["corridor"];
    w["length"] = config.corridor.length;
    w["width"] = config.corridor.width;
    w["pedestrians"] = config.corridor.pedestrians;
    w["pedestrian_radius"] = config.corridor.pedestrian_radius;
    w["pedestrian_speed"] = config.corridor.pedestrian_speed;
    w["wall_disc_radius"] = config.corridor.wall_disc_radius;
    w["wall_disc_spacing"] = config.corridor.wall_disc_spacing;
    w["clearance_radius"] = config.corridor.clearances.empty()
                                ? 0.0
                                : config.corridor.clearances.front().radius;
  } else {
    json& w = j["world"];
    w["extent"] =
        json::array({config.forest.extent_x, config.forest.extent_y});
    w["obstacle_radius"] = config.forest.obstacle_radius;
    if (config.forest.min_spacing > 0.0) {
      w["min_spacing"] = config.forest.min_spacing;
    } else {
      w["density"] = config.forest.density;
    }
    w["clearance_radius"] = config.forest.clearances.empty()
                                ? 0.0
                                : config.forest.clearances.front().radius;
  }
  return j;
}

ControllerConfig controller_config(const ExperimentConfig& config) {
  ControllerConfig out;
  out.rollouts = config.rollouts;
  out.horizon = config.horizon;
  out.cost.r_diag = config.r_diag;
  out.cost.nu = config.nu;
  out.cost.lambda = config.lambda;
  out.noise = config.scheme == Scheme::kMppi
                  ? NoisePolicy::make_gaussian(config.variance)
                  : NoisePolicy::make_nln(config.variance);
  out.sg_order = config.sg_order;
  out.sg_window = config.sg_window;
  out.clamp_after_smoothing = config.clamp_after_smoothing;
  out.threads = config.controller_threads;
  if (config.task == Task::kCartpole) {
    out.bounds = ControlBounds::unbounded(1);
  } else {
    out.bounds.lower = Eigen::Vector2d(-config.mission.v_des, -config.omega_max);
    out.bounds.upper = Eigen::Vector2d(config.mission.v_des, config.omega_max);
  }
  return out;
}

NavigationTask navigation_task(const ExperimentConfig& config) {
  NavigationTask task;
  task.mission = config.mission;
  task.map = config.map;
  task.q_diag = config.q_diag;
  task.dt = config.dt;
  return task;
}

WorldSpec make_world(const ExperimentConfig& config, std::uint64_t world_seed) {
  switch (config.task) {
    case Task::kForestNav:
    case Task::kUnknownForest:
      return generate_forest(config.forest, world_seed);
    case Task::kCorridor:
      return make_corridor(config.corridor, world_seed);
    case Task::kCartpole:
      break;
  }
  throw std::logic_error("the cartpole task has no world");
}

}  // namespace logmppi::bench
