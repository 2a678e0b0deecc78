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
#include <cmath>
#include <vector>

#include "logmppi/geometry.hpp"
#include "logmppi/models.hpp"

namespace logmppi {

// Added to a stage cost once a trajectory touches an obstacle. Large enough
// to dominate any reachable state plus control cost over a full horizon, so a
// single colliding rollout always ranks below every collision-free one.
constexpr double kCrashPenalty = 1.0e7;

// Diagonal control-effort weights plus the exploration and temperature
// scalars that shape how rollout costs are weighted.
struct ControlCostSpec {
  Eigen::VectorXd r_diag;  // per-channel weight, > 0
  double nu = 1.0;         // exploration divisor, > 0
  double lambda = 1.0;     // inverse temperature, > 0

  // Throws std::invalid_argument on non-positive entries.
  void validate() const;
};

// Diagonal quadratic penalty on the pose error to a goal. The heading
// residual is wrapped before squaring so that goals near the +-pi seam do not
// incur a spurious full-turn penalty.
struct QuadraticStateCost {
  Eigen::Vector3d q_diag{5.0, 5.0, 2.0};
  Pose2 goal;
};

// Per-component view of one rollout's total, for logging and debugging.
struct CostBreakdown {
  double state = 0.0;
  double control = 0.0;
  double collision = 0.0;
  double terminal = 0.0;

  double total() const { return state + control + collision + terminal; }
};

// Control-effort penalty of a single channel: the perturbation term scaled by
// (1 - 1/nu)/2, the cross term, and the quadratic nominal term.
inline double control_penalty(double r, double inv_nu, double u, double du) {
  return 0.5 * (1.0 - inv_nu) * r * du * du + r * u * du + 0.5 * r * u * u;
}

// Sum of per-channel penalties, accumulated left to right. Both the batched
// rollout kernels and the sequential reference below call this, which keeps
// the two paths bit-identical.
template <typename DerivedU, typename DerivedDu>
double control_penalty_sum(const ControlCostSpec& spec,
                           const Eigen::MatrixBase<DerivedU>& u,
                           const Eigen::MatrixBase<DerivedDu>& du) {
  const double inv_nu = 1.0 / spec.nu;
  double acc = 0.0;
  for (Eigen::Index c = 0; c < spec.r_diag.size(); ++c) {
    acc += control_penalty(spec.r_diag[c], inv_nu, u[c], du[c]);
  }
  return acc;
}

// One stage of the rollout cost: a state-cost value plus the control-effort
// penalty for this step's nominal control and sampled perturbation.
template <typename DerivedU, typename DerivedDu>
double running_cost(double state_cost, const Eigen::MatrixBase<DerivedU>& u,
                    const Eigen::MatrixBase<DerivedDu>& du,
                    const ControlCostSpec& spec) {
  return state_cost + control_penalty_sum(spec, u, du);
}

inline double navigation_state_cost(const DiffDriveState& x,
                                    const QuadraticStateCost& cost,
                                    bool crashed) {
  const double dx = x.x - cost.goal.x;
  const double dy = x.y - cost.goal.y;
  const double dheading = wrap_angle(x.heading - cost.goal.heading);
  double q = cost.q_diag[0] * dx * dx + cost.q_diag[1] * dy * dy +
             cost.q_diag[2] * dheading * dheading;
  if (crashed) {
    q += kCrashPenalty;
  }
  return q;
}

// Swing-up objective: penalizes cart offset, distance of the pole from
// upright, and both rates. Zero exactly at the inverted rest state.
inline double cartpole_state_cost(const CartpoleState& x) {
  const double upright_gap = 1.0 + std::cos(x.theta);
  return 10.0 * x.x * x.x + 1000.0 * upright_gap * upright_gap +
         2.0 * x.theta_dot * x.theta_dot + 2.0 * x.x_dot * x.x_dot;
}

// Sequential reference for a rollout's total cost: terminal value plus the
// per-stage fold of state cost and control penalty. stage_state_costs carries
// q(x_k) for k = 0..N-1 (with any collision penalty already added), nominal
// and perturbations are N x channels.
double cost_to_go(const std::vector<double>& stage_state_costs,
                  double terminal_cost, const Eigen::MatrixXd& nominal,
                  const Eigen::MatrixXd& perturbations,
                  const ControlCostSpec& spec);

}  // namespace logmppi

