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

#pragma once

#include <utility>

#include "cavs/friction.hpp"

namespace cavs {

/// Three-level deadband law on the red-area ratio. Ratios are fractions
/// (0.40 = 40 %); steps are finger displacements in mm, opening positive.
struct ControllerConfig {
  double r_target_LC = 0.40;
  double r_target_SC = 1.00;
  double epsilon = 0.005;
  double step_open = 0.25;
  double step_close = -0.5;

  /// Throws ConfigError. Closing must be the larger step.
  void validate() const;

  /// Target ratio for a desired mode (LC or SC).
  double target(ContactState mode) const;
};

struct FingerCommand {
  double delta_d_f = 0.0;
  bool operator==(const FingerCommand&) const = default;
};

FingerCommand control_step(const ControllerConfig& cfg, double r_img,
                           ContactState mode);

std::pair<FingerCommand, FingerCommand> dual_finger_step(
    const ControllerConfig& cfg, double r_left, double r_right,
    ContactState mode);

}  // namespace cavs
