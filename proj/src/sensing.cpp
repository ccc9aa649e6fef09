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

#include "cavs/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "cavs/errors.hpp"

namespace cavs {

void CameraModel::validate() const {
  if (!(std::isfinite(focal_px) && focal_px > 0.0)) {
    throw ConfigError("camera.focal_px must be positive");
  }
  if (image_width_px < 16 || image_height_px < 16) {
    throw ConfigError("camera image dimensions must be at least 16 px");
  }
  if (w_SCimg && !(*w_SCimg > 0.0)) {
    throw ConfigError("camera.w_SCimg must be positive when set");
  }
  if (!(std::isfinite(noise_std_pct) && noise_std_pct >= 0.0)) {
    throw ConfigError("camera.noise_std_pct must be non-negative");
  }
}

Rgb SyntheticFrame::at(int x, int y) const {
  const size_t i = (static_cast<size_t>(y) * width + x) * 3;
  return {pixels[i], pixels[i + 1], pixels[i + 2]};
}

bool is_red(Rgb px) { return px.r >= 200 && px.g <= 50 && px.b <= 50; }

double image_width_wimg(const CameraModel& cam, const JointState& state,
                        const CavsGeometry& geom) {
  const double depth = state.p_D.y();
  if (!(depth > 0.0)) {
    throw BehindCamera("red strip end D is at depth " + std::to_string(depth) +
                       " mm, not in front of the camera");
  }
  return cam.focal_px / depth * projected_width_wx(state, geom);
}

CameraModel calibrate_sc_reference(const CameraModel& cam,
                                   const LinkageSolver& linkage) {
  cam.validate();
  const CavsGeometry& geom = linkage.geometry();
  CameraModel out = cam;
  out.w_SCimg = image_width_wimg(cam, linkage.solve(geom.d_SC), geom);
  return out;
}

CameraModel calibrate_sc_reference(const CameraModel& cam,
                                   const CavsGeometry& geom) {
  return calibrate_sc_reference(cam, LinkageSolver(geom));
}

double red_area_ratio(const CameraModel& cam, const CavsGeometry& geom,
                      double d) {
  if (!cam.w_SCimg) throw NotCalibrated("camera has no SC reference width");
  const LinkageSolver linkage(geom);
  return image_width_wimg(cam, linkage.solve(d), geom) / *cam.w_SCimg;
}

namespace {

SyntheticFrame render_band(const CameraModel& cam, double w_img) {
  SyntheticFrame f;
  f.width = cam.image_width_px;
  f.height = cam.image_height_px;
  f.pixels.assign(static_cast<size_t>(f.width) * f.height * 3, 255);

  const long band =
      std::clamp<long>(std::lround(w_img), 0L, static_cast<long>(f.width));
  const long x0 = (f.width - band) / 2;
  const int y0 = f.height / 3;
  const int y1 = 2 * f.height / 3;
  for (int y = y0; y < y1; ++y) {
    for (long x = x0; x < x0 + band; ++x) {
      const size_t i = (static_cast<size_t>(y) * f.width + x) * 3;
      f.pixels[i + 1] = 0;
      f.pixels[i + 2] = 0;
    }
  }
  return f;
}

}  // namespace

SyntheticFrame render_synthetic_frame(const CameraModel& cam,
                                      const CavsGeometry& geom, double d) {
  if (!cam.w_SCimg) throw NotCalibrated("camera has no SC reference width");
  cam.validate();
  const LinkageSolver linkage(geom);
  return render_band(cam, image_width_wimg(cam, linkage.solve(d), geom));
}

double detect_red_ratio(const SyntheticFrame& frame, const CameraModel& cam) {
  if (!cam.w_SCimg) throw NotCalibrated("camera has no SC reference width");
  int columns = 0;
  for (int x = 0; x < frame.width; ++x) {
    for (int y = 0; y < frame.height; ++y) {
      if (is_red(frame.at(x, y))) {
        ++columns;
        break;
      }
    }
  }
  return columns / *cam.w_SCimg;
}

void write_ppm(std::ostream& out, const SyntheticFrame& frame) {
  out << "P6\n" << frame.width << ' ' << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels.data()),
            static_cast<std::streamsize>(frame.pixels.size()));
}

SyntheticFrame read_ppm(std::istream& in) {
  std::string magic;
  SyntheticFrame f;
  int maxval = 0;
  in >> magic >> f.width >> f.height >> maxval;
  if (magic != "P6" || maxval != 255 || f.width <= 0 || f.height <= 0) {
    throw IoError("not a binary 8-bit PPM");
  }
  in.get();  // single whitespace after the header
  f.pixels.resize(static_cast<size_t>(f.width) * f.height * 3);
  in.read(reinterpret_cast<char*>(f.pixels.data()),
          static_cast<std::streamsize>(f.pixels.size()));
  if (!in) throw IoError("truncated PPM raster");
  return f;
}

RedAreaSensor::RedAreaSensor(const CavsGeometry& geom, const CameraModel& cam)
    : linkage_(geom), camera_(calibrate_sc_reference(cam, linkage_)) {}

double RedAreaSensor::image_width(double d) const {
  return image_width_wimg(camera_, linkage_.solve(d), geometry());
}

double RedAreaSensor::ratio(double d) const {
  return image_width(d) / *camera_.w_SCimg;
}

SyntheticFrame RedAreaSensor::render(double d) const {
  return render_band(camera_, image_width(d));
}

double RedAreaSensor::deformation_for_ratio(double r) const {
  double lo = 0.0;
  double hi = geometry().d_SC;
  if (r <= ratio(lo)) return lo;
  if (r >= ratio(hi)) return hi;
  for (int i = 0; i < 100 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) < r ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RatioNoise::RatioNoise(double std_pct, std::uint64_t seed)
    : std_pct_(std_pct), rng_(seed) {}

double RatioNoise::standard_normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  // 53-bit uniforms in (0, 1].
  auto uniform = [this] {
    return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
  };
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

double RatioNoise::apply(double ratio) {
  if (std_pct_ == 0.0) return ratio;
  return ratio + std_pct_ * standard_normal() / 100.0;
}

}  // namespace cavs
