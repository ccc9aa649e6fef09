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

#include <string>

#include "cavs/config.hpp"
#include "cavs/scenario.hpp"
#include "cavs/sensing.hpp"

namespace cavs {

/// Ratio curve rows "d_mm,r_img_pct,contact_state" from d_min to d_max.
/// The range must lie inside the deformation limits (ConfigError otherwise).
std::string ratio_curve_csv(const Config& cfg, double d_min, double d_max,
                            double step);

/// Press curve rows "d_mm,force_N" on [0, d_max]; the curve knots are always
/// included as rows of their own.
std::string press_curve_csv(const Config& cfg, double d_max, double step);

/// Rows "direction,state,f_nslip_N,f_max_N,ecmsf" for every direction and
/// contact state over [f_min, f_max]. Requires f_min > 0.
std::string anisotropy_csv(const Config& cfg, double f_min, double f_max,
                           double step);

/// Runs a scenario from an open gripper (gap = object width + 1 mm).
ScenarioResult run_control_demo(const Config& cfg, const Scenario& scenario);

/// Frame for deformation d.
SyntheticFrame render_frame(const Config& cfg, double d);

/// One-row table "d_mm,theta1_rad,theta2_rad,gamma_rad,w_img_px,r_img_pct,
/// contact_state".
std::string solve_report(const Config& cfg, double d);

/// Reads a whole file. Throws IoError.
std::string read_file(const std::string& path);

/// Writes via a temporary sibling file and rename, so a failed write never
/// leaves a truncated target. Throws IoError.
void write_file_atomic(const std::string& path, const std::string& bytes);

}  // namespace cavs
