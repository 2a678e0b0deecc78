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

// Microbenchmarks for the hot paths: noise sampling, costmap construction,
// and the full control step at the sizes the presets use. The forest
// control-step case at 2500 rollouts x 250 steps is the real-time budget
// to watch.

#include <cstdint>
#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "logmppi/controller.hpp"
#include "logmppi/costmap.hpp"
#include "logmppi/costs.hpp"
#include "logmppi/rng.hpp"
#include "logmppi/sampling.hpp"
#include "logmppi/world.hpp"

namespace {

using namespace logmppi;

void BM_GaussianSequences(benchmark::State& state) {
  const int rollouts = static_cast<int>(state.range(0));
  const int horizon = static_cast<int>(state.range(1));
  const int channels = static_cast<int>(state.range(2));
  GaussianNoiseSpec spec;
  spec.variance = Eigen::VectorXd::Constant(channels, 0.023);
  Eigen::MatrixXd out(horizon, channels);
  for (auto _ : state) {
    for (int m = 0; m < rollouts; ++m) {
      sample_gaussian_into(spec, CounterRng(1234, static_cast<std::uint64_t>(m)),
                           out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(
                                                   rollouts) *
                          horizon * channels);
}
BENCHMARK(BM_GaussianSequences)
    ->Args({1000, 100, 1})
    ->Args({2500, 250, 2})
    ->Unit(benchmark::kMillisecond);

void BM_NlnSequences(benchmark::State& state) {
  const int rollouts = static_cast<int>(state.range(0));
  const int horizon = static_cast<int>(state.range(1));
  const int channels = static_cast<int>(state.range(2));
  const NlnMixtureParams params =
      match_nln_params(Eigen::VectorXd::Constant(channels, 0.002));
  Eigen::MatrixXd out(horizon, channels);
  for (auto _ : state) {
    for (int m = 0; m < rollouts; ++m) {
      sample_nln_into(params, CounterRng(1234, static_cast<std::uint64_t>(m)),
                      out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(
                                                   rollouts) *
                          horizon * channels);
}
BENCHMARK(BM_NlnSequences)
    ->Args({1000, 100, 1})
    ->Args({2500, 250, 2})
    ->Unit(benchmark::kMillisecond);

WorldSpec bench_forest() {
  ForestParams params;
  params.extent_x = 25.0;
  params.extent_y = 25.0;
  params.density = 0.1;
  params.clearances = {{1.0, 1.0, 1.5}, {24.0, 24.0, 1.5}};
  return generate_forest(params, 99);
}

void BM_CostmapFromScan(benchmark::State& state) {
  const WorldSpec world = bench_forest();
  const std::vector<Disc>& obstacles = world.obstacles;
  const GridParams grid;
  const SensorSpec sensor;
  const Pose2 center{12.5, 12.5, 0.0};
  for (auto _ : state) {
    OccupancyGrid map = build_from_world(obstacles, center, grid, sensor);
    benchmark::DoNotOptimize(map);
  }
}
BENCHMARK(BM_CostmapFromScan)->Unit(benchmark::kMillisecond);

void BM_InflateGrid(benchmark::State& state) {
  const WorldSpec world = bench_forest();
  const OccupancyGrid map = build_from_world(
      world.obstacles, Pose2{12.5, 12.5, 0.0}, GridParams{}, SensorSpec{});
  for (auto _ : state) {
    OccupancyGrid inflated = inflate(map, 0.35);
    benchmark::DoNotOptimize(inflated);
  }
}
BENCHMARK(BM_InflateGrid)->Unit(benchmark::kMillisecond);

ControlCostSpec nav_cost() {
  ControlCostSpec cost;
  cost.lambda = 0.169;
  cost.nu = 1200.0;
  cost.r_diag = Eigen::Vector2d(3.779, 3.6031);
  return cost;
}

// The preset-sized forest control step: 2500 rollouts of 250 steps against
// an inflated known map. range(0) is the controller thread count.
void BM_ForestControlStep(benchmark::State& state) {
  const WorldSpec world = bench_forest();
  OccupancyGrid map =
      rasterize_discs(world.obstacles, -8.0, -8.0, 820, 820, 0.05);
  map = inflate(map, 0.35);
  const CollisionChecker checker(map, RobotFootprint{0.3}, false);

  ControllerConfig config;
  config.rollouts = 2500;
  config.horizon = 250;
  config.cost = nav_cost();
  config.noise = NoisePolicy::make_nln(Eigen::Vector2d(0.002, 0.0022));
  config.bounds = ControlBounds{Eigen::Vector2d(-1.5, -2.0),
                                Eigen::Vector2d(1.5, 2.0)};
  config.threads = static_cast<int>(state.range(0));

  auto kernel = std::make_shared<DiffDriveKernel>(
      0.02, QuadraticStateCost{Eigen::Vector3d(2.5, 2.5, 2.0),
                               Pose2{24.0, 24.0, 0.0}},
      config.cost, true);
  kernel->set_map(&checker);
  MppiController controller(config, kernel);

  const Eigen::Vector3d x0(1.0, 1.0, 0.785);
  std::uint64_t tick = 0;
  for (auto _ : state) {
    const Eigen::VectorXd u = controller.control_step(x0, mix_seed(5, tick++));
    benchmark::DoNotOptimize(u);
  }
  state.SetItemsProcessed(state.iterations() * 2500LL * 250LL);
}
BENCHMARK(BM_ForestControlStep)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_CartpoleControlStep(benchmark::State& state) {
  ControllerConfig config;
  config.rollouts = 1000;
  config.horizon = 100;
  config.cost.lambda = 0.07;
  config.cost.nu = 1000.0;
  config.cost.r_diag = Eigen::VectorXd::Constant(1, 0.23333);
  config.noise = NoisePolicy::make_nln(Eigen::VectorXd::Constant(1, 0.0225));
  config.sg_order = 5;
  config.sg_window = 51;
  config.bounds = ControlBounds::unbounded(1);

  auto kernel =
      std::make_shared<CartpoleKernel>(CartpoleConfig{}, config.cost);
  MppiController controller(config, kernel);

  const Eigen::Vector4d x0(0.0, 0.0, 0.0, 0.0);
  std::uint64_t tick = 0;
  for (auto _ : state) {
    const Eigen::VectorXd u = controller.control_step(x0, mix_seed(9, tick++));
    benchmark::DoNotOptimize(u);
  }
  state.SetItemsProcessed(state.iterations() * 1000LL * 100LL);
}
BENCHMARK(BM_CartpoleControlStep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
