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

#include "logmppi/models.hpp"

#include <stdexcept>

namespace logmppi {

double cartpole_mechanical_energy(const CartpoleConfig& config,
                                  const CartpoleState& state) {
  const double c = std::cos(state.theta);
  const double s = std::sin(state.theta);
  const double tip_vx = state.x_dot + config.length * state.theta_dot * c;
  const double tip_vy = config.length * state.theta_dot * s;
  const double kinetic =
      0.5 * config.cart_mass * state.x_dot * state.x_dot +
      0.5 * config.pole_mass * (tip_vx * tip_vx + tip_vy * tip_vy);
  const double potential = -config.pole_mass * config.gravity * config.length * c;
  return kinetic + potential;
}

std::vector<DiffDriveState> rollout(const DiffDriveState& start,
                                    const Eigen::MatrixXd& controls,
                                    double dt) {
  if (controls.cols() != 2) {
    throw std::invalid_argument("diff drive controls must have columns (v, omega)");
  }
  std::vector<DiffDriveState> states;
  states.reserve(static_cast<size_t>(controls.rows()) + 1);
  states.push_back(start);
  for (Eigen::Index k = 0; k < controls.rows(); ++k) {
    states.push_back(
        diff_drive_step(states.back(), controls(k, 0), controls(k, 1), dt));
  }
  return states;
}

std::vector<CartpoleState> rollout(const CartpoleConfig& config,
                                   const CartpoleState& start,
                                   const Eigen::VectorXd& forces) {
  std::vector<CartpoleState> states;
  states.reserve(static_cast<size_t>(forces.size()) + 1);
  states.push_back(start);
  for (Eigen::Index k = 0; k < forces.size(); ++k) {
    states.push_back(cartpole_step(config, states.back(), forces[k]));
  }
  return states;
}

}  // namespace logmppi
