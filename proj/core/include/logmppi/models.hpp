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

namespace logmppi {

// Planar differential-drive robot. State is the pose (x, y, heading); the
// controls are body-frame forward speed and yaw rate.
struct DiffDriveState {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

// Force-actuated cart with a point-mass pendulum on a massless rod.
// theta = 0 is the pendulum hanging straight down, theta = pi is upright.
struct CartpoleState {
  double x = 0.0;
  double x_dot = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
};

struct CartpoleConfig {
  double cart_mass = 1.0;   // kg
  double pole_mass = 0.01;  // kg, concentrated at the rod tip
  double length = 1.0;      // m
  double gravity = 9.81;    // m/s^2
  double dt = 0.02;         // s
};

// One forward-Euler step of the unicycle kinematics. The heading of the
// returned state is wrapped to (-pi, pi].
//
// Kept inline so that batched rollouts and the single-trajectory API run the
// exact same instructions and stay bit-identical.
inline DiffDriveState diff_drive_step(const DiffDriveState& state, double v,
                                      double omega, double dt) {
  DiffDriveState next;
  next.x = state.x + v * std::cos(state.heading) * dt;
  next.y = state.y + v * std::sin(state.heading) * dt;
  next.heading = wrap_angle(state.heading + omega * dt);
  return next;
}

// Accelerations of the cart (qdd_x) and the pendulum angle (qdd_theta) for a
// given configuration and applied horizontal force.
inline void cartpole_accel(const CartpoleConfig& config, double theta,
                           double theta_dot, double force, double& qdd_x,
                           double& qdd_theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double m = config.pole_mass;
  qdd_x = (force + m * s * (config.length * theta_dot * theta_dot +
                            config.gravity * c)) /
          (config.cart_mass + m * s * s);
  qdd_theta = -(qdd_x * c + config.gravity * s) / config.length;
}

namespace detail {

struct CartpoleDeriv {
  double x_dot;
  double x_ddot;
  double theta_dot;
  double theta_ddot;
};

inline CartpoleDeriv cartpole_deriv(const CartpoleConfig& config,
                                    const CartpoleState& state, double force) {
  CartpoleDeriv d;
  d.x_dot = state.x_dot;
  d.theta_dot = state.theta_dot;
  cartpole_accel(config, state.theta, state.theta_dot, force, d.x_ddot,
                 d.theta_ddot);
  return d;
}

inline CartpoleState cartpole_advance(const CartpoleState& state,
                                      const CartpoleDeriv& d, double h) {
  CartpoleState next;
  next.x = state.x + h * d.x_dot;
  next.x_dot = state.x_dot + h * d.x_ddot;
  next.theta = state.theta + h * d.theta_dot;
  next.theta_dot = state.theta_dot + h * d.theta_ddot;
  return next;
}

}  // namespace detail

// One classical fourth-order Runge-Kutta step with the force held constant
// over the interval. The angle is deliberately left unwrapped so that energy
// and trajectory plots stay continuous across full rotations.
inline CartpoleState cartpole_step(const CartpoleConfig& config,
                                   const CartpoleState& state, double force) {
  const double dt = config.dt;
  const detail::CartpoleDeriv k1 = detail::cartpole_deriv(config, state, force);
  const detail::CartpoleDeriv k2 = detail::cartpole_deriv(
      config, detail::cartpole_advance(state, k1, 0.5 * dt), force);
  const detail::CartpoleDeriv k3 = detail::cartpole_deriv(
      config, detail::cartpole_advance(state, k2, 0.5 * dt), force);
  const detail::CartpoleDeriv k4 = detail::cartpole_deriv(
      config, detail::cartpole_advance(state, k3, dt), force);
  CartpoleState next;
  const double w = dt / 6.0;
  next.x = state.x + w * (k1.x_dot + 2.0 * k2.x_dot + 2.0 * k3.x_dot + k4.x_dot);
  next.x_dot = state.x_dot +
               w * (k1.x_ddot + 2.0 * k2.x_ddot + 2.0 * k3.x_ddot + k4.x_ddot);
  next.theta = state.theta + w * (k1.theta_dot + 2.0 * k2.theta_dot +
                                  2.0 * k3.theta_dot + k4.theta_dot);
  next.theta_dot =
      state.theta_dot + w * (k1.theta_ddot + 2.0 * k2.theta_ddot +
                             2.0 * k3.theta_ddot + k4.theta_ddot);
  return next;
}

// Total mechanical energy with the pivot height as the potential reference,
// useful for checking integrator drift.
double cartpole_mechanical_energy(const CartpoleConfig& config,
                                  const CartpoleState& state);

// Integrates a full control sequence, returning horizon + 1 states with the
// start state first. controls is horizon x 2 with columns (v, omega).
std::vector<DiffDriveState> rollout(const DiffDriveState& start,
                                    const Eigen::MatrixXd& controls, double dt);

// Same for the cartpole; forces has one entry per step.
std::vector<CartpoleState> rollout(const CartpoleConfig& config,
                                   const CartpoleState& start,
                                   const Eigen::VectorXd& forces);

}  // namespace logmppi

