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
#include <optional>
#include <random>
#include <vector>

#include "cavs/kinematics.hpp"

namespace cavs {

/// Pinhole camera looking along +y from the origin of the linkage frame.
struct CameraModel {
  double focal_px = 300.0;
  int image_width_px = 320;
  int image_height_px = 240;
  std::optional<double> w_SCimg;  // px, set by calibrate_sc_reference
  double noise_std_pct = 0.0;     // percentage points on the reported ratio

  void validate() const;
};

struct Rgb {
  std::uint8_t r = 255;
  std::uint8_t g = 255;
  std::uint8_t b = 255;
  bool operator==(const Rgb&) const = default;
};

/// Row-major 8-bit RGB raster.
struct SyntheticFrame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Rgb at(int x, int y) const;
};

/// A pixel counts as red iff R >= 200, G <= 50, B <= 50.
bool is_red(Rgb px);

/// w_img = focal / p_Dy * w_x. Throws BehindCamera if p_Dy <= 0.
double image_width_wimg(const CameraModel& cam, const JointState& state,
                        const CavsGeometry& geom);

CameraModel calibrate_sc_reference(const CameraModel& cam,
                                   const CavsGeometry& geom);
CameraModel calibrate_sc_reference(const CameraModel& cam,
                                   const LinkageSolver& linkage);

/// r_img at deformation d, as a fraction (1.0 at d_SC).
double red_area_ratio(const CameraModel& cam, const CavsGeometry& geom,
                      double d);

/// Renders a white frame with a centred red band round(w_img) px wide,
/// spanning the middle third of the rows.
SyntheticFrame render_synthetic_frame(const CameraModel& cam,
                                      const CavsGeometry& geom, double d);

/// Counts columns holding at least one red pixel and divides by w_SCimg.
double detect_red_ratio(const SyntheticFrame& frame, const CameraModel& cam);

/// Binary PPM (P6, maxval 255).
void write_ppm(std::ostream& out, const SyntheticFrame& frame);
SyntheticFrame read_ppm(std::istream& in);

/// Calibrated sensing chain for one geometry: caches the linkage branch and
/// the SC reference so repeated ratio queries cost one Newton solve.
class RedAreaSensor {
 public:
  RedAreaSensor(const CavsGeometry& geom, const CameraModel& cam);

  const LinkageSolver& linkage() const { return linkage_; }
  const CameraModel& camera() const { return camera_; }
  const CavsGeometry& geometry() const { return linkage_.geometry(); }

  double image_width(double d) const;
  double ratio(double d) const;
  SyntheticFrame render(double d) const;

  /// Deformation in [0, d_SC] whose ratio equals r, clamped to the ends of
  /// that interval. The ratio curve is increasing there.
  double deformation_for_ratio(double r) const;

 private:
  LinkageSolver linkage_;
  CameraModel camera_;
};

/// Seeded additive Gaussian noise in percentage points. Uses Box-Muller over
/// mt19937_64 so the sequence is identical on every standard library.
class RatioNoise {
 public:
  RatioNoise(double std_pct, std::uint64_t seed);

  /// Returns ratio + N(0, std_pct) / 100.
  double apply(double ratio);

 private:
  double standard_normal();

  double std_pct_;
  std::mt19937_64 rng_;
  std::optional<double> spare_;
};

}  // namespace cavs
