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

#include "cavs/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cavs/errors.hpp"

namespace cavs {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::string_view section,
                    std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    throw ConfigError(std::string(section) + " must be an object");
  }
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) {
      throw ConfigError("unknown key '" + std::string(section) + "." + key +
                        "'");
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void read_vec(const json& j, const char* key, Vec2& out) {
  if (!j.contains(key)) return;
  const auto& a = j.at(key);
  if (!a.is_array() || a.size() != 2) {
    throw ConfigError(std::string(key) + " must be a two-element array");
  }
  out = Vec2(a[0].get<double>(), a[1].get<double>());
}

// {"LC": {"lateral": x, "longitudinal": y}, "SC": {...}}
void read_table(const json& j, const char* key,
                std::array<std::array<double, 2>, 2>& out) {
  if (!j.contains(key)) return;
  const auto& t = j.at(key);
  reject_unknown(t, key, {"LC", "SC"});
  const char* states[2] = {"LC", "SC"};
  for (size_t s = 0; s < 2; ++s) {
    if (!t.contains(states[s])) continue;
    const auto& row = t.at(states[s]);
    reject_unknown(row, std::string(key) + "." + states[s],
                   {"lateral", "longitudinal"});
    read(row, "lateral", out[s][0]);
    read(row, "longitudinal", out[s][1]);
  }
}

void read_geometry(const json& j, CavsGeometry& g) {
  reject_unknown(j, "geometry", {"l1", "l2", "l3", "l_r", "p_A", "p_cx0",
                                 "p_E0", "d_SC", "depth_convention"});
  read(j, "l1", g.l1);
  read(j, "l2", g.l2);
  read(j, "l3", g.l3);
  read(j, "l_r", g.l_r);
  read_vec(j, "p_A", g.p_A);
  read(j, "p_cx0", g.p_cx0);
  read_vec(j, "p_E0", g.p_E0);
  read(j, "d_SC", g.d_SC);
  if (j.contains("depth_convention")) {
    const auto s = j.at("depth_convention").get<std::string>();
    if (s == "consistent") {
      g.depth = DepthConvention::kConsistent;
    } else if (s == "printed") {
      g.depth = DepthConvention::kPrinted;
    } else {
      throw ConfigError("geometry.depth_convention must be consistent or printed");
    }
  }
}

void read_camera(const json& j, CameraModel& c) {
  reject_unknown(j, "camera", {"focal_px", "image_width_px", "image_height_px",
                               "noise_std_pct"});
  read(j, "focal_px", c.focal_px);
  read(j, "image_width_px", c.image_width_px);
  read(j, "image_height_px", c.image_height_px);
  read(j, "noise_std_pct", c.noise_std_pct);
}

void read_friction(const json& j, FrictionParams& f) {
  reject_unknown(j, "friction",
                 {"d_LC_end", "d_SC_start", "f_local_max", "f_local_min",
                  "sc_reference_deformation", "sc_reference_force", "mu",
                  "adhesion", "kinetic_fraction"});
  read(j, "d_LC_end", f.d_LC_end);
  read(j, "d_SC_start", f.d_SC_start);
  read(j, "f_local_max", f.f_local_max);
  read(j, "f_local_min", f.f_local_min);
  read(j, "sc_reference_deformation", f.sc_reference_deformation);
  read(j, "sc_reference_force", f.sc_reference_force);
  read_table(j, "mu", f.mu);
  read_table(j, "adhesion", f.adhesion);
  read(j, "kinetic_fraction", f.kinetic_fraction);
}

void read_controller(const json& j, ControllerConfig& c) {
  reject_unknown(j, "controller", {"r_target_LC", "r_target_SC", "epsilon",
                                   "step_open", "step_close"});
  read(j, "r_target_LC", c.r_target_LC);
  read(j, "r_target_SC", c.r_target_SC);
  read(j, "epsilon", c.epsilon);
  read(j, "step_open", c.step_open);
  read(j, "step_close", c.step_close);
}

void read_object(const json& j, ObjectModel& o) {
  reject_unknown(j, "object", {"nominal_width", "stiffness",
                               "required_hold_force", "slide_demand"});
  read(j, "nominal_width", o.nominal_width);
  read(j, "stiffness", o.stiffness);
  read(j, "required_hold_force", o.required_hold_force);
  if (j.contains("slide_demand") && !j.at("slide_demand").is_null()) {
    o.slide_demand = j.at("slide_demand").get<double>();
  }
}

}  // namespace

void Config::validate() const {
  geometry.validate();
  camera.validate();
  friction.validate();
  controller.validate();
  object.validate();
}

Config parse_config(const std::string& text) {
  Config cfg;
  try {
    const json doc = text.find_first_not_of(" \t\r\n") == std::string::npos
                         ? json::object()
                         : json::parse(text);
    reject_unknown(doc, "config", {"geometry", "camera", "friction",
                                   "controller", "object", "seed"});
    if (doc.contains("geometry")) read_geometry(doc.at("geometry"), cfg.geometry);
    if (doc.contains("camera")) read_camera(doc.at("camera"), cfg.camera);
    if (doc.contains("friction")) read_friction(doc.at("friction"), cfg.friction);
    if (doc.contains("controller")) {
      read_controller(doc.at("controller"), cfg.controller);
    }
    if (doc.contains("object")) read_object(doc.at("object"), cfg.object);
    read(doc, "seed", cfg.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config document: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace cavs
