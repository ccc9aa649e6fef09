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

#include "cavs/control.hpp"

#include <cmath>
#include <stdexcept>

#include "cavs/errors.hpp"

namespace cavs {

void ControllerConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(epsilon > 0.0, "controller.epsilon must be positive");
  require(step_open > 0.0, "controller.step_open must be positive");
  require(step_close < 0.0, "controller.step_close must be negative");
  require(std::abs(step_close) > step_open,
          "controller: |step_close| must exceed step_open");
  require(r_target_LC > 0.0 && r_target_LC < r_target_SC &&
              r_target_SC <= 1.5,
          "controller: need 0 < r_target_LC < r_target_SC <= 1.5");
}

double ControllerConfig::target(ContactState mode) const {
  switch (mode) {
    case ContactState::LC: return r_target_LC;
    case ContactState::SC: return r_target_SC;
    case ContactState::Transition: break;
  }
  throw std::invalid_argument("desired mode must be LC or SC");
}

FingerCommand control_step(const ControllerConfig& cfg, double r_img,
                           ContactState mode) {
  const double error = r_img - cfg.target(mode);
  if (error > cfg.epsilon) return {cfg.step_open};
  if (error < -cfg.epsilon) return {cfg.step_close};
  return {0.0};
}

std::pair<FingerCommand, FingerCommand> dual_finger_step(
    const ControllerConfig& cfg, double r_left, double r_right,
    ContactState mode) {
  return {control_step(cfg, r_left, mode), control_step(cfg, r_right, mode)};
}

}  // namespace cavs
