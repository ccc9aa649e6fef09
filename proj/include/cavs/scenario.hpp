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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cavs/control.hpp"
#include "cavs/friction.hpp"
#include "cavs/kinematics.hpp"
#include "cavs/plant.hpp"
#include "cavs/sensing.hpp"

namespace cavs {

/// Perturbation applied during part of a step. Times are relative to the
/// start of the step.
struct Disturbance {
  enum class Kind { None, Ratio, Force };

  Kind kind = Kind::None;
  Finger finger = Finger::Right;
  double start_s = 0.0;
  double duration_s = 0.0;
  // Ratio: added to the measured ratio (fraction). Force: extra normal load
  // on the finger in N (negative unloads it).
  double magnitude = 0.0;

  bool active(double t_in_step) const {
    return kind != Kind::None && t_in_step >= start_s &&
           t_in_step < start_s + duration_s;
  }
};

struct ScenarioStep {
  std::string name;
  ContactState target_mode = ContactState::SC;
  double duration_s = 1.0;
  Disturbance disturbance;
};

struct Scenario {
  double tick_dt_s = 0.1;
  std::vector<ScenarioStep> steps;

  /// Throws ConfigError on an empty list, a non-positive duration or tick,
  /// or a Transition target.
  void validate() const;
};

/// Parses the scenario document:
///   {"tick_dt_s": 0.1, "steps": [{"name": ..., "target_mode": "LC"|"SC",
///     "duration_s": ..., "disturbance": {"kind": "ratio"|"force",
///     "finger": "left"|"right", "start_s": ..., "duration_s": ...,
///     "magnitude": ...}}]}
Scenario parse_scenario(const std::string& text);

/// One row of the time-series log; one per finger per tick.
struct TimeSeriesRecord {
  double time_s = 0.0;
  Finger finger = Finger::Left;
  ContactState desired_state = ContactState::SC;
  double r_img_pct = 0.0;  // ratio the controller acted on
  double r_target_pct = 0.0;
  double delta_df_mm = 0.0;
  double finger_pos_mm = 0.0;  // after the command
  double deformation_mm = 0.0;
  ContactState contact_state = ContactState::LC;
  double f_n_N = 0.0;
  double f_max_long_N = 0.0;
  bool slide_flag = false;
};

inline constexpr const char* kTimeSeriesHeader =
    "time_s,finger,desired_state,r_img_pct,r_target_pct,delta_df_mm,"
    "finger_pos_mm,deformation_mm,contact_state,f_n_N,f_max_long_N,"
    "slide_flag";

void write_time_series_csv(std::ostream& out,
                           const std::vector<TimeSeriesRecord>& records);

struct StepSummary {
  std::string name;
  ContactState target_mode = ContactState::SC;
  int ticks = 0;
  int settle_tick = -1;  // index within the step; -1 if never settled
  bool grasp_maintained = false;
  bool slide_achieved = false;
  double band_occupancy = 0.0;  // after settling, within the widened band
};

struct ScenarioResult {
  std::vector<TimeSeriesRecord> records;
  std::vector<StepSummary> summary;
};

void write_summary(std::ostream& out, const ScenarioResult& result);

/// Sensing, controller and gripper plant advanced tick by tick. Owns mutable
/// state; single-threaded.
class GripperWorld {
 public:
  GripperWorld(const CavsGeometry& geom, const CameraModel& cam,
               const FrictionParams& friction, const ControllerConfig& ctrl,
               const ObjectModel& object, std::uint64_t seed);

  /// Places both fingers so each CAVS is at deformation d (d = 0 touches
  /// without load).
  void place_symmetric(double d);
  /// Places the fingers at a given gap, centred, with no branch history.
  void place_open(double gap);

  const PlantState& state() const { return state_; }
  const RedAreaSensor& sensor() const { return sensor_; }
  const GripperPlant& plant() const { return plant_; }
  const ControllerConfig& controller() const { return ctrl_; }
  double time() const { return static_cast<double>(tick_) * dt_; }

  /// True ratio of one finger's CAVS in the current state.
  double ratio(Finger f) const;

  /// Largest ratio change one closing step can cause along the ratio curve
  /// on [0, d_SC]; widens the convergence band.
  double ratio_step_bound() const { return ratio_step_bound_; }
  double slide_demand() const { return slide_demand_; }

  /// Runs one scenario step, returning its records (two per tick).
  std::vector<TimeSeriesRecord> run_step(const ScenarioStep& step,
                                         double tick_dt);

  ScenarioResult run(const Scenario& scenario);

 private:
  CavsGeometry geom_;
  RedAreaSensor sensor_;
  FrictionParams friction_;
  ControllerConfig ctrl_;
  GripperPlant plant_;
  RatioNoise noise_;
  PlantState state_;
  long tick_ = 0;
  double dt_ = 0.1;
  double ratio_step_bound_ = 0.0;
  double slide_demand_ = 0.0;
};

/// Summarises the records of one step.
StepSummary summarize_step(const ScenarioStep& step,
                           const std::vector<TimeSeriesRecord>& records,
                           const ControllerConfig& ctrl,
                           double ratio_step_bound,
                           double required_hold_force);

}  // namespace cavs
