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

#include "cavs/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "cavs/csv.hpp"
#include "cavs/errors.hpp"
#include "cavs/press_curve.hpp"

namespace cavs {

namespace {

// Samples lo, lo + step, ... up to hi, ending exactly on hi.
std::vector<double> sample_range(double lo, double hi, double step,
                                 const char* what) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step) ||
      !(step > 0.0) || hi < lo) {
    throw ConfigError(std::string(what) + ": need finite lo <= hi and step > 0");
  }
  const double span = (hi - lo) / step;
  if (span > 1e6) throw ConfigError(std::string(what) + ": too many samples");
  std::vector<double> xs;
  const auto n = static_cast<long>(std::floor(span + 1e-9));
  // Snapped to 1e-12 so that e.g. 38 * 0.05 lands on the double nearest 1.9.
  for (long i = 0; i <= n; ++i) {
    xs.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) /
                 1e12);
  }
  if (hi - xs.back() > 1e-9 * std::max(1.0, std::abs(hi))) {
    xs.push_back(hi);
  } else {
    xs.back() = hi;
  }
  return xs;
}

}  // namespace

std::string ratio_curve_csv(const Config& cfg, double d_min, double d_max,
                            double step) {
  cfg.validate();
  const RedAreaSensor sensor(cfg.geometry, cfg.camera);
  const auto lim = sensor.linkage().limits();
  if (d_min < lim.d_min || d_max > lim.d_max) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "ratio-curve: range must lie within [%.6g, %.6g] mm",
                  lim.d_min, lim.d_max);
    throw ConfigError(buf);
  }
  const auto ds = sample_range(d_min, d_max, step, "ratio-curve");
  std::ostringstream out;
  out << "d_mm,r_img_pct,contact_state\n";
  for (double d : ds) {
    out << format_number(d) << ',' << format_number(100.0 * sensor.ratio(d))
        << ',' << to_string(classify_contact_state(cfg.friction, d)) << '\n';
  }
  return out.str();
}

std::string press_curve_csv(const Config& cfg, double d_max, double step) {
  cfg.validate();
  auto ds = sample_range(0.0, d_max, step, "press-curve");
  const PressCurve curve(cfg.friction);
  for (double k : curve.interpolant().knots()) {
    if (k > d_max) continue;
    auto it = std::find_if(ds.begin(), ds.end(), [k](double d) {
      return std::abs(d - k) <= 1e-9;
    });
    if (it != ds.end()) {
      *it = k;
    } else {
      ds.push_back(k);
    }
  }
  std::sort(ds.begin(), ds.end());
  std::ostringstream out;
  out << "d_mm,force_N\n";
  for (double d : ds) {
    out << format_number(d) << ',' << format_number(curve.force(d)) << '\n';
  }
  return out.str();
}

std::string anisotropy_csv(const Config& cfg, double f_min, double f_max,
                           double step) {
  cfg.validate();
  if (!(f_min > 0.0)) throw ConfigError("anisotropy: f_min must be positive");
  const auto fs = sample_range(f_min, f_max, step, "anisotropy");
  std::ostringstream out;
  out << "direction,state,f_nslip_N,f_max_N,ecmsf\n";
  for (Direction dir : {Direction::Lateral, Direction::Longitudinal}) {
    for (ContactState st : {ContactState::LC, ContactState::SC}) {
      for (double f : fs) {
        const double fm = max_resistible_force(cfg.friction, st, dir, f);
        out << to_string(dir) << ',' << to_string(st) << ','
            << format_number(f) << ',' << format_number(fm) << ','
            << format_number(ecmsf(fm, f)) << '\n';
      }
    }
  }
  return out.str();
}

ScenarioResult run_control_demo(const Config& cfg, const Scenario& scenario) {
  cfg.validate();
  scenario.validate();
  GripperWorld world(cfg.geometry, cfg.camera, cfg.friction, cfg.controller,
                     cfg.object, cfg.seed);
  world.place_open(cfg.object.nominal_width + 1.0);
  return world.run(scenario);
}

SyntheticFrame render_frame(const Config& cfg, double d) {
  cfg.validate();
  const RedAreaSensor sensor(cfg.geometry, cfg.camera);
  const auto lim = sensor.linkage().limits();
  if (!(d >= lim.d_min && d <= lim.d_max)) {
    throw ConfigError("render: d outside the deformation limits");
  }
  return sensor.render(d);
}

std::string solve_report(const Config& cfg, double d) {
  cfg.validate();
  const RedAreaSensor sensor(cfg.geometry, cfg.camera);
  const JointState s = sensor.linkage().solve(d);
  std::ostringstream out;
  out << "d_mm,theta1_rad,theta2_rad,gamma_rad,w_img_px,r_img_pct,"
         "contact_state\n"
      << format_number(d) << ',' << format_number(s.theta1) << ','
      << format_number(s.theta2) << ',' << format_number(s.gamma) << ','
      << format_number(sensor.image_width(d)) << ','
      << format_number(100.0 * sensor.ratio(d)) << ','
      << to_string(classify_contact_state(cfg.friction, d)) << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw IoError("write to '" + path + "' failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot move output into '" + path + "'");
  }
}

}  // namespace cavs
