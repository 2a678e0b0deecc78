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

#include <gtest/gtest.h>

#include <cmath>

namespace logmppi {
namespace {

constexpr double kPi = 3.14159265358979323846;

TEST(DiffDriveTest, StraightStepFromOrigin) {
  const DiffDriveState next = diff_drive_step({0.0, 0.0, 0.0}, 1.5, 0.5, 0.02);
  EXPECT_DOUBLE_EQ(next.x, 0.03);
  EXPECT_DOUBLE_EQ(next.y, 0.0);
  EXPECT_DOUBLE_EQ(next.heading, 0.01);
}

TEST(DiffDriveTest, HeadingWrapsPastPi) {
  const DiffDriveState next = diff_drive_step({0.0, 0.0, 3.14}, 0.0, 2.0, 0.02);
  EXPECT_NEAR(next.heading, -3.103185307179586, 1e-12);
  EXPECT_GT(next.heading, -kPi);
  EXPECT_LE(next.heading, kPi);
}

TEST(DiffDriveTest, UsesHeadingAtStartOfStep) {
  // Forward Euler evaluates the direction before the heading is advanced, so
  // a turn during the step must not bend the translation.
  const DiffDriveState next =
      diff_drive_step({1.0, 2.0, kPi / 2.0}, 2.0, 1.5, 0.02);
  EXPECT_NEAR(next.x, 1.0, 1e-15);
  EXPECT_NEAR(next.y, 2.04, 1e-12);
}

TEST(DiffDriveTest, RolloutMatchesStepComposition) {
  Eigen::MatrixXd controls(40, 2);
  for (int k = 0; k < 40; ++k) {
    controls(k, 0) = 1.0 + 0.01 * k;
    controls(k, 1) = std::sin(0.2 * k);
  }
  const std::vector<DiffDriveState> states =
      rollout(DiffDriveState{0.5, -0.25, 0.3}, controls, 0.02);
  ASSERT_EQ(states.size(), 41u);
  DiffDriveState s{0.5, -0.25, 0.3};
  for (int k = 0; k < 40; ++k) {
    s = diff_drive_step(s, controls(k, 0), controls(k, 1), 0.02);
    EXPECT_DOUBLE_EQ(states[k + 1].x, s.x);
    EXPECT_DOUBLE_EQ(states[k + 1].y, s.y);
    EXPECT_DOUBLE_EQ(states[k + 1].heading, s.heading);
  }
}

TEST(CartpoleTest, RestAtHangingIsFixedPoint) {
  const CartpoleConfig config;
  const CartpoleState next = cartpole_step(config, CartpoleState{}, 0.0);
  EXPECT_DOUBLE_EQ(next.x, 0.0);
  EXPECT_DOUBLE_EQ(next.x_dot, 0.0);
  EXPECT_DOUBLE_EQ(next.theta, 0.0);
  EXPECT_DOUBLE_EQ(next.theta_dot, 0.0);
}

TEST(CartpoleTest, FrozenForcedStep) {
  const CartpoleConfig config;
  const CartpoleState next =
      cartpole_step(config, {0.0, 0.0, 2.0, 0.0}, 5.0);
  EXPECT_NEAR(next.x, 0.0009844431374298125, 1e-12);
  EXPECT_NEAR(next.x_dot, 0.09844500564727092, 1e-12);
  EXPECT_NEAR(next.theta, 1.9986252393834207, 1e-12);
  EXPECT_NEAR(next.theta_dot, -0.13751495966291585, 1e-12);
}

TEST(CartpoleTest, EnergyNearlyConservedUnforced) {
  const CartpoleConfig config;
  CartpoleState state{0.0, 0.0, 2.0, 0.0};
  const double e0 = cartpole_mechanical_energy(config, state);
  for (int k = 0; k < 100; ++k) {
    state = cartpole_step(config, state, 0.0);
  }
  const double e1 = cartpole_mechanical_energy(config, state);
  EXPECT_LT(std::abs(e1 - e0) / std::abs(e0), 0.01);
}

TEST(CartpoleTest, UprightEquilibriumIsUnstable) {
  const CartpoleConfig config;
  CartpoleState state{0.0, 0.0, kPi - 0.01, 0.0};
  for (int k = 0; k < 50; ++k) {
    state = cartpole_step(config, state, 0.0);
  }
  // A 0.01 rad tilt grows by an order of magnitude within a second.
  EXPECT_GT(std::abs(kPi - state.theta), 0.1);
}

TEST(CartpoleTest, HangingEquilibriumIsStable) {
  const CartpoleConfig config;
  CartpoleState state{0.0, 0.0, 0.01, 0.0};
  double max_angle = 0.0;
  for (int k = 0; k < 500; ++k) {
    state = cartpole_step(config, state, 0.0);
    max_angle = std::max(max_angle, std::abs(state.theta));
  }
  EXPECT_LT(max_angle, 0.011);
}

TEST(CartpoleTest, RolloutMatchesStepComposition) {
  const CartpoleConfig config;
  Eigen::VectorXd forces(60);
  for (int k = 0; k < 60; ++k) forces[k] = 3.0 * std::sin(0.3 * k);
  const std::vector<CartpoleState> states =
      rollout(config, CartpoleState{0.1, 0.0, 0.5, -0.2}, forces);
  ASSERT_EQ(states.size(), 61u);
  CartpoleState s{0.1, 0.0, 0.5, -0.2};
  for (int k = 0; k < 60; ++k) {
    s = cartpole_step(config, s, forces[k]);
    EXPECT_DOUBLE_EQ(states[k + 1].x, s.x);
    EXPECT_DOUBLE_EQ(states[k + 1].theta, s.theta);
    EXPECT_DOUBLE_EQ(states[k + 1].theta_dot, s.theta_dot);
  }
}

TEST(CartpoleTest, EnergyAtRestHangingIsMinusMgl) {
  const CartpoleConfig config;
  EXPECT_DOUBLE_EQ(cartpole_mechanical_energy(config, CartpoleState{}),
                   -config.pole_mass * config.gravity * config.length);
}

TEST(DiffDriveTest, RolloutRejectsWrongControlShape) {
  Eigen::MatrixXd controls(10, 3);
  controls.setZero();
  EXPECT_THROW(rollout(DiffDriveState{}, controls, 0.02), std::invalid_argument);
}

}  // namespace
}  // namespace logmppi
