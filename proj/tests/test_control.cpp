// Copyright 2026 The cavs-sim Authors
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

#include <random>

#include <gtest/gtest.h>

#include "cavs/control.hpp"
#include "cavs/errors.hpp"
#include "oracles.hpp"

namespace {

using cavs::ContactState;
using cavs::ControllerConfig;

TEST(ControlStep, PublishedBranches) {
  const ControllerConfig c;
  EXPECT_EQ(cavs::control_step(c, 1.00, ContactState::LC).delta_d_f, 0.25);
  EXPECT_EQ(cavs::control_step(c, 0.403, ContactState::LC).delta_d_f, 0.0);
  EXPECT_EQ(cavs::control_step(c, 0.20, ContactState::SC).delta_d_f, -0.5);
}

TEST(ControlStep, PartitionFuzz) {
  const ControllerConfig c;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.5);
  for (int i = 0; i < 200000; ++i) {
    const double r = i < 150001 ? 1e-5 * i : u(rng);
    for (auto mode : {ContactState::LC, ContactState::SC}) {
      const double t = c.target(mode);
      const double cmd = cavs::control_step(c, r, mode).delta_d_f;
      const int fired = (r - t > c.epsilon) + (r - t < -c.epsilon) +
                        (std::abs(r - t) <= c.epsilon);
      ASSERT_EQ(fired, 1);
      ASSERT_EQ(cmd, oracle::deadband(r, t, c.epsilon, c.step_open,
                                      c.step_close));
      if (std::abs(r - t) <= c.epsilon) ASSERT_EQ(cmd, 0.0);
    }
  }
}

TEST(ControlStep, AboveFullContactOpens) {
  const ControllerConfig c;
  EXPECT_EQ(cavs::control_step(c, 1.2, ContactState::SC).delta_d_f, 0.25);
}

TEST(DualFinger, IndependentPerFinger) {
  const ControllerConfig c;
  const auto [l, r] = cavs::dual_finger_step(c, 1.0, 0.2, ContactState::LC);
  EXPECT_EQ(l.delta_d_f, 0.25);
  EXPECT_EQ(r.delta_d_f, -0.5);
  const auto [a, b] = cavs::dual_finger_step(c, 0.7, 0.7, ContactState::SC);
  EXPECT_EQ(a, b);
}

TEST(Config, Validation) {
  auto bad = [](auto mutate) {
    ControllerConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), cavs::ConfigError);
  };
  EXPECT_NO_THROW(ControllerConfig{}.validate());
  bad([](ControllerConfig& c) { c.epsilon = 0.0; });
  bad([](ControllerConfig& c) { c.step_open = 0.0; });
  bad([](ControllerConfig& c) { c.step_close = 0.1; });
  bad([](ControllerConfig& c) { c.step_close = -0.2; });  // |close| <= open
  bad([](ControllerConfig& c) { c.r_target_LC = 1.2; });
  bad([](ControllerConfig& c) { c.r_target_SC = 1.6; });
  bad([](ControllerConfig& c) { c.r_target_LC = 0.0; });
  EXPECT_THROW(ControllerConfig{}.target(ContactState::Transition),
               std::invalid_argument);
}

}  // namespace
