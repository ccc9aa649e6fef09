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

#include "cavs/press_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cavs {

namespace {

double sign(double v) { return (v > 0.0) - (v < 0.0); }

// Three-point end slope that keeps the end segment shape-preserving.
double end_slope(double h0, double h1, double del0, double del1) {
  double m = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
  if (sign(m) != sign(del0)) {
    m = 0.0;
  } else if (sign(del0) != sign(del1) && std::abs(m) > 3.0 * std::abs(del0)) {
    m = 3.0 * del0;
  }
  return m;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw std::invalid_argument("monotone cubic needs matching knots");
  }
  for (size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw std::invalid_argument("knots must be strictly increasing");
    }
  }
  std::vector<double> h(n - 1);
  std::vector<double> del(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    del[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  m_.assign(n, 0.0);
  if (n == 2) {
    m_[0] = m_[1] = del[0];
    return;
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    if (del[i - 1] == 0.0 || del[i] == 0.0 ||
        sign(del[i - 1]) != sign(del[i])) {
      m_[i] = 0.0;
    } else {
      // Weighted harmonic mean.
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
    }
  }
  m_[0] = end_slope(h[0], h[1], del[0], del[1]);
  m_[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
}

size_t MonotoneCubic::segment(double t) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  const auto i = static_cast<size_t>(std::distance(x_.begin(), it));
  return std::clamp<size_t>(i, 1, x_.size() - 1) - 1;
}

double MonotoneCubic::operator()(double t) const {
  if (t <= x_.front()) return y_.front() + m_.front() * (t - x_.front());
  if (t >= x_.back()) return y_.back() + m_.back() * (t - x_.back());
  const size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * m_[i] +
         (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * h * m_[i + 1];
}

double MonotoneCubic::derivative(double t) const {
  if (t <= x_.front()) return m_.front();
  if (t >= x_.back()) return m_.back();
  const size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * y_[i] + (-6 * s2 + 6 * s) * y_[i + 1]) / h +
         (3 * s2 - 4 * s + 1) * m_[i] + (3 * s2 - 2 * s) * m_[i + 1];
}

PressCurve::PressCurve(const FrictionParams& p)
    : spline_({0.0, p.d_LC_end, p.d_SC_start, p.sc_reference_deformation},
              {0.0, p.f_local_max, p.f_local_min, p.sc_reference_force}) {
  const double inf = std::numeric_limits<double>::infinity();
  pieces_ = {{0.0, p.d_LC_end, true},
             {p.d_LC_end, p.d_SC_start, false},
             {p.d_SC_start, inf, true}};
}

double PressCurve::force(double d) const {
  return d <= 0.0 ? 0.0 : spline_(d);
}

double PressCurve::stiffness(double d) const {
  return spline_.derivative(std::max(d, 0.0));
}

std::pair<double, double> PressCurve::force_range(const Piece& piece) const {
  const double a = force(piece.d_lo);
  const double b = std::isinf(piece.d_hi)
                       ? std::numeric_limits<double>::infinity()
                       : force(piece.d_hi);
  return {std::min(a, b), std::max(a, b)};
}

double PressCurve::deformation_on(const Piece& piece, double f) const {
  double lo = piece.d_lo;
  double hi = piece.d_hi;
  if (std::isinf(hi)) {
    const double x_end = spline_.knots().back();
    const double f_end = spline_.values().back();
    if (f >= f_end) return x_end + (f - f_end) / spline_.slopes().back();
    hi = x_end;
  }
  const double s = piece.rising ? 1.0 : -1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (s * (force(mid) - f) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double pressing_force(const FrictionParams& params, double d) {
  return PressCurve(params).force(d);
}

}  // namespace cavs
