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

#include "cavs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "cavs/csv.hpp"
#include "cavs/errors.hpp"

namespace cavs {

namespace {

Finger finger_from_string(const std::string& s) {
  if (s == "left") return Finger::Left;
  if (s == "right") return Finger::Right;
  throw ConfigError("disturbance.finger must be 'left' or 'right'");
}

}  // namespace

void Scenario::validate() const {
  if (!(tick_dt_s > 0.0)) throw ConfigError("scenario.tick_dt_s must be positive");
  if (steps.empty()) throw ConfigError("scenario has no steps");
  for (const auto& s : steps) {
    if (!(s.duration_s > 0.0)) {
      throw ConfigError("step '" + s.name + "' needs a positive duration");
    }
    if (s.target_mode == ContactState::Transition) {
      throw ConfigError("step '" + s.name + "' target must be LC or SC");
    }
    if (s.disturbance.kind != Disturbance::Kind::None &&
        !(s.disturbance.duration_s > 0.0)) {
      throw ConfigError("step '" + s.name +
                        "' disturbance needs a positive duration");
    }
  }
}

Scenario parse_scenario(const std::string& text) {
  using nlohmann::json;
  Scenario sc;
  try {
    const json doc = json::parse(text);
    for (const auto& [key, _] : doc.items()) {
      if (key != "tick_dt_s" && key != "steps") {
        throw ConfigError("unknown scenario key '" + key + "'");
      }
    }
    sc.tick_dt_s = doc.value("tick_dt_s", sc.tick_dt_s);
    for (const auto& js : doc.at("steps")) {
      ScenarioStep step;
      for (const auto& [key, _] : js.items()) {
        if (key != "name" && key != "target_mode" && key != "duration_s" &&
            key != "disturbance") {
          throw ConfigError("unknown step key '" + key + "'");
        }
      }
      step.name = js.value("name", std::string("step"));
      step.target_mode =
          contact_state_from_string(js.at("target_mode").get<std::string>());
      step.duration_s = js.at("duration_s").get<double>();
      if (js.contains("disturbance")) {
        const auto& jd = js.at("disturbance");
        const auto kind = jd.at("kind").get<std::string>();
        if (kind == "ratio") {
          step.disturbance.kind = Disturbance::Kind::Ratio;
        } else if (kind == "force") {
          step.disturbance.kind = Disturbance::Kind::Force;
        } else if (kind != "none") {
          throw ConfigError("disturbance.kind must be ratio, force or none");
        }
        step.disturbance.finger =
            finger_from_string(jd.value("finger", std::string("right")));
        step.disturbance.start_s = jd.value("start_s", 0.0);
        step.disturbance.duration_s = jd.value("duration_s", 0.0);
        step.disturbance.magnitude = jd.value("magnitude", 0.0);
      }
      sc.steps.push_back(std::move(step));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario document: ") + e.what());
  }
  sc.validate();
  return sc;
}

void write_time_series_csv(std::ostream& out,
                           const std::vector<TimeSeriesRecord>& records) {
  out << kTimeSeriesHeader << '\n';
  for (const auto& r : records) {
    out << format_time(r.time_s) << ',' << to_string(r.finger) << ','
        << to_string(r.desired_state) << ',' << format_number(r.r_img_pct) << ','
        << format_number(r.r_target_pct) << ',' << format_number(r.delta_df_mm) << ','
        << format_number(r.finger_pos_mm) << ',' << format_number(r.deformation_mm) << ','
        << to_string(r.contact_state) << ',' << format_number(r.f_n_N) << ','
        << format_number(r.f_max_long_N) << ',' << (r.slide_flag ? 1 : 0) << '\n';
  }
}

void write_summary(std::ostream& out, const ScenarioResult& result) {
  out << "step,target_mode,ticks,settle_tick,grasp_maintained,"
         "slide_achieved,band_occupancy\n";
  for (const auto& s : result.summary) {
    const bool sc = s.target_mode == ContactState::SC;
    out << s.name << ',' << to_string(s.target_mode) << ',' << s.ticks << ','
        << s.settle_tick << ','
        << (sc ? (s.grasp_maintained ? "yes" : "no") : "-") << ','
        << (sc ? "-" : (s.slide_achieved ? "yes" : "no")) << ','
        << format_number(s.band_occupancy) << '\n';
  }
}

GripperWorld::GripperWorld(const CavsGeometry& geom, const CameraModel& cam,
                           const FrictionParams& friction,
                           const ControllerConfig& ctrl,
                           const ObjectModel& object, std::uint64_t seed)
    : geom_(geom),
      sensor_(geom, cam),
      friction_(friction),
      ctrl_(ctrl),
      plant_(friction, object),
      noise_(cam.noise_std_pct, seed) {
  ctrl_.validate();

  const double reach = std::abs(ctrl_.step_close);
  for (double d = 0.0; d + reach <= geom_.d_SC + 1e-12; d += 0.01) {
    ratio_step_bound_ = std::max(
        ratio_step_bound_, sensor_.ratio(d + reach) - sensor_.ratio(d));
  }

  if (object.slide_demand) {
    slide_demand_ = *object.slide_demand;
  } else {
    const PressCurve& curve = plant_.press_curve();
    const double d_lc = sensor_.deformation_for_ratio(ctrl_.r_target_LC);
    const double d_sc = sensor_.deformation_for_ratio(ctrl_.r_target_SC);
    const double f_lc = max_resistible_force_at(
        friction_, d_lc, Direction::Longitudinal, curve.force(d_lc));
    const double f_sc = max_resistible_force_at(
        friction_, d_sc, Direction::Longitudinal, curve.force(d_sc));
    slide_demand_ = 0.5 * (f_lc + f_sc);
  }
  place_open(object.nominal_width + 1.0);
}

void GripperWorld::place_symmetric(double d) {
  const auto& obj = plant_.object();
  const double force = plant_.press_curve().force(d);
  const double gap = obj.nominal_width - (2.0 * d + force / obj.stiffness);
  state_ = plant_.solve(0.5 * gap, 0.5 * gap, {d, d});
}

void GripperWorld::place_open(double gap) {
  state_ = plant_.solve(0.5 * gap, 0.5 * gap, {});
}

double GripperWorld::ratio(Finger f) const {
  return sensor_.ratio(f == Finger::Left ? state_.d_left : state_.d_right);
}

std::vector<TimeSeriesRecord> GripperWorld::run_step(const ScenarioStep& step,
                                                     double tick_dt) {
  dt_ = tick_dt;
  const ObjectModel& obj = plant_.object();
  const long ticks = std::max(1L, std::lround(step.duration_s / tick_dt));
  const double target = ctrl_.target(step.target_mode);
  const double applied = step.target_mode == ContactState::SC
                             ? 0.5 * obj.required_hold_force
                             : slide_demand_;
  const Disturbance& dist = step.disturbance;

  std::vector<TimeSeriesRecord> out;
  out.reserve(static_cast<size_t>(ticks) * 2);
  for (long k = 0; k < ticks; ++k) {
    const double t = time();
    const double t_in_step = static_cast<double>(k) * tick_dt;
    const bool disturbed = dist.active(t_in_step);

    double measured[2];
    for (Finger f : {Finger::Left, Finger::Right}) {
      double r = noise_.apply(ratio(f));
      if (disturbed && dist.kind == Disturbance::Kind::Ratio &&
          dist.finger == f) {
        r += dist.magnitude;
      }
      measured[f == Finger::Left ? 0 : 1] = std::max(r, 0.0);
    }
    const auto [cmd_l, cmd_r] =
        dual_finger_step(ctrl_, measured[0], measured[1], step.target_mode);

    double external = 0.0;
    if (disturbed && dist.kind == Disturbance::Kind::Force) {
      external = dist.finger == Finger::Right ? dist.magnitude
                                              : -dist.magnitude;
    }
    try {
      state_ = plant_.solve(state_.finger_pos_left + cmd_l.delta_d_f,
                            state_.finger_pos_right + cmd_r.delta_d_f,
                            state_.memory(), external);
    } catch (const SolverFailure& e) {
      throw SolverFailure("tick " + std::to_string(tick_) + ": " + e.what());
    }
    const SlideCheck check = slide_check(friction_, obj, state_,
                                         Direction::Longitudinal, applied);

    for (Finger f : {Finger::Left, Finger::Right}) {
      const bool left = f == Finger::Left;
      TimeSeriesRecord rec;
      rec.time_s = t;
      rec.finger = f;
      rec.desired_state = step.target_mode;
      rec.r_img_pct = 100.0 * measured[left ? 0 : 1];
      rec.r_target_pct = 100.0 * target;
      rec.delta_df_mm = (left ? cmd_l : cmd_r).delta_d_f;
      rec.finger_pos_mm =
          left ? state_.finger_pos_left : state_.finger_pos_right;
      rec.deformation_mm = left ? state_.d_left : state_.d_right;
      rec.contact_state = classify_contact_state(friction_, rec.deformation_mm);
      rec.f_n_N = left ? state_.f_n_left : state_.f_n_right;
      rec.f_max_long_N = left ? check.f_max_left : check.f_max_right;
      rec.slide_flag =
          (left ? check.left : check.right) == SlideOutcome::Slides;
      out.push_back(rec);
    }
    ++tick_;
  }
  return out;
}

ScenarioResult GripperWorld::run(const Scenario& scenario) {
  scenario.validate();
  ScenarioResult result;
  for (const auto& step : scenario.steps) {
    auto recs = run_step(step, scenario.tick_dt_s);
    result.summary.push_back(summarize_step(step, recs, ctrl_,
                                            ratio_step_bound_,
                                            plant_.object().required_hold_force));
    result.records.insert(result.records.end(), recs.begin(), recs.end());
  }
  return result;
}

StepSummary summarize_step(const ScenarioStep& step,
                           const std::vector<TimeSeriesRecord>& records,
                           const ControllerConfig& ctrl,
                           double ratio_step_bound,
                           double required_hold_force) {
  StepSummary s;
  s.name = step.name;
  s.target_mode = step.target_mode;
  s.ticks = static_cast<int>(records.size() / 2);
  const double target = 100.0 * ctrl.target(step.target_mode);
  const double wide = 100.0 * (ctrl.epsilon + ratio_step_bound);

  for (int k = 0; k < s.ticks; ++k) {
    const auto& l = records[2 * k];
    const auto& r = records[2 * k + 1];
    if (std::abs(l.r_img_pct - target) <= wide &&
        std::abs(r.r_img_pct - target) <= wide) {
      s.settle_tick = k;
      break;
    }
  }
  if (s.settle_tick < 0) return s;

  int in_band = 0;
  bool all_hold = true;
  bool all_slide = true;
  for (int k = s.settle_tick; k < s.ticks; ++k) {
    const auto& l = records[2 * k];
    const auto& r = records[2 * k + 1];
    in_band += (std::abs(l.r_img_pct - target) <= wide) +
               (std::abs(r.r_img_pct - target) <= wide);
    const bool grasp = l.f_max_long_N + r.f_max_long_N >= required_hold_force;
    all_hold = all_hold && grasp && !l.slide_flag && !r.slide_flag;
    all_slide = all_slide && grasp && l.slide_flag && r.slide_flag &&
                l.f_n_N > 0.0 && r.f_n_N > 0.0;
  }
  s.band_occupancy =
      static_cast<double>(in_band) / (2.0 * (s.ticks - s.settle_tick));
  s.grasp_maintained = all_hold;
  s.slide_achieved = all_slide;
  return s;
}

}  // namespace cavs
