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

#include "logmppi/controller.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "logmppi/parallel.hpp"

namespace logmppi {
namespace {

// Rollouts are claimed in fixed-size blocks so the work partition, and with
// it every write pattern, is independent of the worker count.
constexpr int kRolloutBlock = 64;

bool all_finite(const Eigen::VectorXd& v) {
  return v.allFinite();
}

}  // namespace

NoisePolicy NoisePolicy::make_gaussian(const Eigen::VectorXd& variances) {
  NoisePolicy policy;
  policy.kind = Kind::kGaussian;
  policy.gaussian.variance = variances;
  return policy;
}

NoisePolicy NoisePolicy::make_nln(const Eigen::VectorXd& normal_variances) {
  NoisePolicy policy;
  policy.kind = Kind::kNln;
  policy.mixture = match_nln_params(normal_variances);
  return policy;
}

ControlBounds ControlBounds::unbounded(int channels) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  ControlBounds bounds;
  bounds.lower = Eigen::VectorXd::Constant(channels, -kInf);
  bounds.upper = Eigen::VectorXd::Constant(channels, kInf);
  return bounds;
}

void ControllerConfig::validate() const {
  if (rollouts < 1) {
    throw std::invalid_argument("rollouts must be at least 1");
  }
  if (horizon < 1) {
    throw std::invalid_argument("horizon must be at least 1");
  }
  const int m = channels();
  if (m < 1) {
    throw std::invalid_argument("noise policy must define at least one channel");
  }
  cost.validate();
  if (cost.r_diag.size() != m) {
    throw std::invalid_argument("cost.r_diag size must match the control channels");
  }
  if (sg_window < 3 || sg_window % 2 == 0) {
    throw std::invalid_argument("sg_window must be an odd number of at least 3");
  }
  if (sg_order < 0 || sg_order >= sg_window) {
    throw std::invalid_argument("sg_order must lie in [0, sg_window)");
  }
  if (horizon <= sg_window / 2) {
    throw std::invalid_argument("horizon must exceed half the sg_window for mirror padding");
  }
  if (bounds.lower.size() != m || bounds.upper.size() != m) {
    throw std::invalid_argument("bounds must have one entry per control channel");
  }
  for (int c = 0; c < m; ++c) {
    if (!(bounds.lower[c] <= bounds.upper[c])) {
      throw std::invalid_argument("bounds.lower must not exceed bounds.upper");
    }
  }
  if (threads < 1) {
    throw std::invalid_argument("threads must be at least 1");
  }
}

int RolloutBatch::nonfinite_count() const {
  int n = 0;
  for (Eigen::Index m = 0; m < costs.size(); ++m) {
    if (costs[m] == kNonFiniteCostSurrogate) ++n;
  }
  return n;
}

DiffDriveKernel::DiffDriveKernel(double dt, QuadraticStateCost goal_cost,
                                 ControlCostSpec cost, bool terminal_state_cost)
    : dt_(dt),
      goal_cost_(std::move(goal_cost)),
      cost_(std::move(cost)),
      terminal_state_cost_(terminal_state_cost) {
  if (!(dt_ > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }
  if (cost_.r_diag.size() != 2) {
    throw std::invalid_argument("diff drive control cost needs two channels");
  }
}

void DiffDriveKernel::rollout_span(const Eigen::VectorXd& x0,
                                   const Eigen::MatrixXd& nominal,
                                   const ControlBounds& bounds, int begin,
                                   int end, RolloutBatch& batch) const {
  const int n = static_cast<int>(nominal.rows());
  const double r0 = cost_.r_diag[0];
  const double r1 = cost_.r_diag[1];
  const double inv_nu = 1.0 / cost_.nu;
  const double lo0 = bounds.lower[0], hi0 = bounds.upper[0];
  const double lo1 = bounds.lower[1], hi1 = bounds.upper[1];
  Eigen::MatrixXd& sx = batch.states[0];
  Eigen::MatrixXd& sy = batch.states[1];
  Eigen::MatrixXd& sh = batch.states[2];
  const Eigen::MatrixXd& dv = batch.noise[0];
  const Eigen::MatrixXd& dw = batch.noise[1];

  for (int m = begin; m < end; ++m) {
    DiffDriveState x{x0[0], x0[1], x0[2]};
    sx(0, m) = x.x;
    sy(0, m) = x.y;
    sh(0, m) = x.heading;
    bool crashed = false;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      if (!crashed && map_ != nullptr) {
        crashed = map_->in_collision(x.x, x.y);
      }
      const double du0 = dv(k, m);
      const double du1 = dw(k, m);
      const double u0 = nominal(k, 0);
      const double u1 = nominal(k, 1);
      const double q = navigation_state_cost(x, goal_cost_, crashed);
      const double pen = control_penalty(r0, inv_nu, u0, du0) +
                         control_penalty(r1, inv_nu, u1, du1);
      acc += q + pen;
      const double v = std::clamp(u0 + du0, lo0, hi0);
      const double w = std::clamp(u1 + du1, lo1, hi1);
      x = diff_drive_step(x, v, w, dt_);
      sx(k + 1, m) = x.x;
      sy(k + 1, m) = x.y;
      sh(k + 1, m) = x.heading;
    }
    if (!crashed && map_ != nullptr) {
      crashed = map_->in_collision(x.x, x.y);
    }
    acc += terminal_state_cost_
               ? navigation_state_cost(x, goal_cost_, crashed)
               : (crashed ? kCrashPenalty : 0.0);
    const bool ok = std::isfinite(acc) && std::isfinite(x.x) &&
                    std::isfinite(x.y) && std::isfinite(x.heading);
    batch.costs[m] = ok ? acc : kNonFiniteCostSurrogate;
  }
}

CartpoleKernel::CartpoleKernel(CartpoleConfig model, ControlCostSpec cost)
    : model_(model), cost_(std::move(cost)) {
  if (cost_.r_diag.size() != 1) {
    throw std::invalid_argument("cartpole control cost needs one channel");
  }
}

void CartpoleKernel::rollout_span(const Eigen::VectorXd& x0,
                                  const Eigen::MatrixXd& nominal,
                                  const ControlBounds& bounds, int begin,
                                  int end, RolloutBatch& batch) const {
  const int n = static_cast<int>(nominal.rows());
  const double r = cost_.r_diag[0];
  const double inv_nu = 1.0 / cost_.nu;
  const double lo = bounds.lower[0], hi = bounds.upper[0];
  Eigen::MatrixXd& sx = batch.states[0];
  Eigen::MatrixXd& sxd = batch.states[1];
  Eigen::MatrixXd& sth = batch.states[2];
  Eigen::MatrixXd& sthd = batch.states[3];
  const Eigen::MatrixXd& df = batch.noise[0];

  for (int m = begin; m < end; ++m) {
    CartpoleState x{x0[0], x0[1], x0[2], x0[3]};
    sx(0, m) = x.x;
    sxd(0, m) = x.x_dot;
    sth(0, m) = x.theta;
    sthd(0, m) = x.theta_dot;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const double du = df(k, m);
      const double u = nominal(k, 0);
      acc += cartpole_state_cost(x) + control_penalty(r, inv_nu, u, du);
      const double force = std::clamp(u + du, lo, hi);
      x = cartpole_step(model_, x, force);
      sx(k + 1, m) = x.x;
      sxd(k + 1, m) = x.x_dot;
      sth(k + 1, m) = x.theta;
      sthd(k + 1, m) = x.theta_dot;
    }
    const bool ok = std::isfinite(acc) && std::isfinite(x.x) &&
                    std::isfinite(x.x_dot) && std::isfinite(x.theta) &&
                    std::isfinite(x.theta_dot);
    batch.costs[m] = ok ? acc : kNonFiniteCostSurrogate;
  }
}

MppiController::MppiController(ControllerConfig config,
                               std::shared_ptr<const RolloutKernel> kernel)
    : config_(std::move(config)),
      kernel_(std::move(kernel)),
      smoother_(config_.sg_order, config_.sg_window) {
  config_.validate();
  if (kernel_ == nullptr) {
    throw std::invalid_argument("kernel must not be null");
  }
  if (kernel_->control_dim() != config_.channels()) {
    throw std::invalid_argument("kernel control dimension does not match the noise policy");
  }
  reset();
}

void MppiController::reset() {
  nominal_ = Eigen::MatrixXd::Zero(config_.horizon, config_.channels());
}

void MppiController::set_nominal(const Eigen::MatrixXd& nominal) {
  if (nominal.rows() != config_.horizon || nominal.cols() != config_.channels()) {
    throw std::invalid_argument("nominal sequence has the wrong shape");
  }
  nominal_ = nominal;
}

void MppiController::fill_rollouts(const Eigen::VectorXd& x0, std::uint64_t seed,
                                   RolloutBatch& batch) const {
  if (x0.size() != kernel_->state_dim()) {
    throw std::invalid_argument("state dimension does not match the kernel");
  }
  if (!all_finite(x0)) {
    throw std::invalid_argument("state must be finite");
  }
  const int m_count = config_.rollouts;
  const int n = config_.horizon;
  const int channels = config_.channels();
  const int dims = kernel_->state_dim();

  batch.noise.resize(static_cast<size_t>(channels));
  for (int c = 0; c < channels; ++c) {
    batch.noise[static_cast<size_t>(c)].resize(n, m_count);
  }
  batch.states.resize(static_cast<size_t>(dims));
  for (int d = 0; d < dims; ++d) {
    batch.states[static_cast<size_t>(d)].resize(n + 1, m_count);
  }
  batch.costs.resize(m_count);

  const int blocks = (m_count + kRolloutBlock - 1) / kRolloutBlock;
  parallel_for_blocks(blocks, config_.threads, [&](int b) {
    const int begin = b * kRolloutBlock;
    const int end = std::min(m_count, begin + kRolloutBlock);
    Eigen::MatrixXd scratch(n, channels);
    for (int m = begin; m < end; ++m) {
      const CounterRng stream(seed, static_cast<std::uint64_t>(m));
      if (config_.noise.kind == NoisePolicy::Kind::kGaussian) {
        sample_gaussian_into(config_.noise.gaussian, stream, scratch);
      } else {
        sample_nln_into(config_.noise.mixture, stream, scratch);
      }
      for (int c = 0; c < channels; ++c) {
        batch.noise[static_cast<size_t>(c)].col(m) = scratch.col(c);
      }
    }
    kernel_->rollout_span(x0, nominal_, config_.bounds, begin, end, batch);
  });
}

RolloutBatch MppiController::generate_rollouts(const Eigen::VectorXd& x0,
                                               std::uint64_t seed) const {
  RolloutBatch batch;
  fill_rollouts(x0, seed, batch);
  return batch;
}

void MppiController::weighted_update(Eigen::MatrixXd& nominal,
                                     const RolloutBatch& batch, double lambda,
                                     Eigen::VectorXd* weights_out) {
  const int m_count = batch.rollouts();
  if (m_count < 1) {
    throw std::invalid_argument("batch must contain at least one rollout");
  }
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("lambda must be positive");
  }
  const auto channels = static_cast<Eigen::Index>(batch.noise.size());
  if (nominal.cols() != channels || channels == 0 ||
      nominal.rows() != batch.noise[0].rows()) {
    throw std::invalid_argument("nominal shape does not match the batch");
  }
  // Subtracting the best cost keeps at least one exponent at exactly zero,
  // so the normalizer can never underflow no matter how large the costs.
  const double baseline = batch.costs.minCoeff();
  Eigen::VectorXd weights =
      ((batch.costs.array() - baseline) * (-1.0 / lambda)).exp();
  weights /= weights.sum();
  for (Eigen::Index c = 0; c < channels; ++c) {
    nominal.col(c).noalias() += batch.noise[static_cast<size_t>(c)] * weights;
  }
  if (weights_out != nullptr) {
    *weights_out = std::move(weights);
  }
}

void MppiController::clamp_nominal() {
  for (int c = 0; c < config_.channels(); ++c) {
    nominal_.col(c) = nominal_.col(c)
                          .cwiseMax(config_.bounds.lower[c])
                          .cwiseMin(config_.bounds.upper[c]);
  }
}

Eigen::VectorXd MppiController::control_step(const Eigen::VectorXd& x0,
                                             std::uint64_t seed,
                                             StepDiagnostics* diagnostics) {
  const auto start = std::chrono::steady_clock::now();
  fill_rollouts(x0, seed, scratch_);
  weighted_update(nominal_, scratch_, config_.cost.lambda, &weights_);
  if (config_.clamp_after_smoothing) {
    smoother_.smooth_in_place(nominal_);
    clamp_nominal();
  } else {
    clamp_nominal();
    smoother_.smooth_in_place(nominal_);
  }

  Eigen::VectorXd applied = nominal_.row(0).transpose();
  for (int c = 0; c < config_.channels(); ++c) {
    applied[c] = std::clamp(applied[c], config_.bounds.lower[c],
                            config_.bounds.upper[c]);
  }

  // Warm start: shift one step forward, repeating the final control.
  for (int k = 0; k + 1 < config_.horizon; ++k) {
    nominal_.row(k) = nominal_.row(k + 1);
  }

  if (diagnostics != nullptr) {
    diagnostics->min_cost = scratch_.costs.minCoeff();
    diagnostics->mean_cost = scratch_.costs.mean();
    diagnostics->ess = 1.0 / weights_.squaredNorm();
    diagnostics->nonfinite = scratch_.nonfinite_count();
    diagnostics->applied = applied;
    diagnostics->millis =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count();
  }
  return applied;
}

}  // namespace logmppi
