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

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <vector>

#include "logmppi/costmap.hpp"
#include "logmppi/costs.hpp"
#include "logmppi/models.hpp"
#include "logmppi/sampling.hpp"
#include "logmppi/sg_filter.hpp"

namespace logmppi {

// Cost assigned to a rollout whose state or cost turned non-finite. Large
// enough to zero its softmax weight against any sane competitor while
// keeping every cost finite for the reductions.
constexpr double kNonFiniteCostSurrogate = 1.0e30;

// Which perturbation distribution the controller samples.
struct NoisePolicy {
  enum class Kind { kGaussian, kNln };

  Kind kind = Kind::kGaussian;
  GaussianNoiseSpec gaussian;
  NlnMixtureParams mixture;

  int channels() const {
    return kind == Kind::kGaussian ? static_cast<int>(gaussian.variance.size())
                                   : mixture.channels();
  }

  static NoisePolicy make_gaussian(const Eigen::VectorXd& variances);
  // Derives the mixture parameters from the normal-factor variances.
  static NoisePolicy make_nln(const Eigen::VectorXd& normal_variances);
};

// Per-channel box constraints. Entries may be infinite for unbounded
// channels.
struct ControlBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static ControlBounds unbounded(int channels);
};

struct ControllerConfig {
  int rollouts = 0;             // M
  int horizon = 0;              // N
  ControlCostSpec cost;         // per-channel weights plus nu and lambda
  NoisePolicy noise;
  int sg_order = 3;
  int sg_window = 51;
  ControlBounds bounds;
  // true: update -> smooth -> clamp (default); false: update -> clamp ->
  // smooth. Exposed because the smoothing/clamping order on the nominal
  // sequence is a judgment call that measurably shapes the applied control.
  bool clamp_after_smoothing = true;
  int threads = 1;

  int channels() const { return noise.channels(); }
  // Throws std::invalid_argument with a field-naming message.
  void validate() const;
};

// One batch of sampled rollouts. Matrices are laid out step-major with one
// column per rollout, so a single rollout's sequence is contiguous.
struct RolloutBatch {
  std::vector<Eigen::MatrixXd> noise;   // per channel: horizon x M
  std::vector<Eigen::MatrixXd> states;  // per state dim: (horizon + 1) x M
  Eigen::VectorXd costs;                // M

  int rollouts() const { return static_cast<int>(costs.size()); }
  int nonfinite_count() const;
};

struct StepDiagnostics {
  double min_cost = 0.0;
  double mean_cost = 0.0;
  double ess = 0.0;  // effective sample size, 1 / sum of squared weights
  int nonfinite = 0;
  double millis = 0.0;
  Eigen::VectorXd applied;
};

// Task plug-in: rolls out perturbed control sequences through the task's
// dynamics and accumulates each rollout's total cost. Implementations must
// write only columns [begin, end) of the batch so spans can run on any
// worker, and must produce results independent of the span partitioning.
class RolloutKernel {
 public:
  virtual ~RolloutKernel() = default;

  virtual int state_dim() const = 0;
  virtual int control_dim() const = 0;

  virtual void rollout_span(const Eigen::VectorXd& x0,
                            const Eigen::MatrixXd& nominal,
                            const ControlBounds& bounds, int begin, int end,
                            RolloutBatch& batch) const = 0;
};

// Differential-drive navigation task: quadratic goal cost, collision
// penalties against a costmap snapshot, optional terminal state cost.
class DiffDriveKernel : public RolloutKernel {
 public:
  DiffDriveKernel(double dt, QuadraticStateCost goal_cost, ControlCostSpec cost,
                  bool terminal_state_cost);

  // The checker must outlive the kernel's use; pass nullptr for free space.
  void set_map(const CollisionChecker* map) { map_ = map; }
  void set_goal(const Pose2& goal) { goal_cost_.goal = goal; }
  const Pose2& goal() const { return goal_cost_.goal; }

  int state_dim() const override { return 3; }
  int control_dim() const override { return 2; }
  void rollout_span(const Eigen::VectorXd& x0, const Eigen::MatrixXd& nominal,
                    const ControlBounds& bounds, int begin, int end,
                    RolloutBatch& batch) const override;

 private:
  double dt_;
  QuadraticStateCost goal_cost_;
  ControlCostSpec cost_;
  bool terminal_state_cost_;
  const CollisionChecker* map_ = nullptr;
};

// Cartpole swing-up task: fixed state cost, no terminal term, no collisions.
class CartpoleKernel : public RolloutKernel {
 public:
  CartpoleKernel(CartpoleConfig model, ControlCostSpec cost);

  int state_dim() const override { return 4; }
  int control_dim() const override { return 1; }
  void rollout_span(const Eigen::VectorXd& x0, const Eigen::MatrixXd& nominal,
                    const ControlBounds& bounds, int begin, int end,
                    RolloutBatch& batch) const override;

 private:
  CartpoleConfig model_;
  ControlCostSpec cost_;
};

// Sampling-based receding-horizon controller. Each control step samples M
// perturbed rollouts, re-weights the nominal sequence by the softmax of
// their costs, smooths it, applies the first control, and shifts the
// sequence one step for the next call.
//
// Determinism contract: a step's output is a pure function of (state,
// nominal sequence, config, seed). Each rollout draws from its own counter
// stream keyed by the rollout index, spans are fixed 64-rollout blocks, and
// every cross-rollout reduction runs sequentially after the parallel phase,
// so the thread count never changes results.
class MppiController {
 public:
  MppiController(ControllerConfig config, std::shared_ptr<const RolloutKernel> kernel);

  void reset();
  const Eigen::MatrixXd& nominal() const { return nominal_; }
  void set_nominal(const Eigen::MatrixXd& nominal);
  const ControllerConfig& config() const { return config_; }
  const SavitzkyGolay& smoother() const { return smoother_; }

  // Samples perturbations and rolls them out. Pure: does not touch the
  // stored nominal sequence.
  RolloutBatch generate_rollouts(const Eigen::VectorXd& x0, std::uint64_t seed) const;

  // Softmax re-weighting of the nominal sequence by rollout costs, with the
  // minimum cost subtracted before exponentiation. Optionally reports the
  // normalized weights.
  static void weighted_update(Eigen::MatrixXd& nominal, const RolloutBatch& batch,
                              double lambda, Eigen::VectorXd* weights_out = nullptr);

  // One full receding-horizon step; returns the applied control.
  Eigen::VectorXd control_step(const Eigen::VectorXd& x0, std::uint64_t seed,
                               StepDiagnostics* diagnostics = nullptr);

 private:
  void fill_rollouts(const Eigen::VectorXd& x0, std::uint64_t seed,
                     RolloutBatch& batch) const;
  void clamp_nominal();

  ControllerConfig config_;
  std::shared_ptr<const RolloutKernel> kernel_;
  SavitzkyGolay smoother_;
  Eigen::MatrixXd nominal_;  // horizon x channels
  RolloutBatch scratch_;
  Eigen::VectorXd weights_;
};

}  // namespace logmppi
