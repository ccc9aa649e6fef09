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

#include <vector>

#include "cavs/friction.hpp"

namespace cavs {

/// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Carlson).
///
/// Knots where the neighbouring secants change sign get zero slope, so the
/// data extrema are the only extrema. End slopes use the three-point
/// shape-preserving formula. Outside the knot range the curve continues
/// linearly with the end slope.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double t) const;
  double derivative(double t) const;

  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  const std::vector<double>& slopes() const { return m_; }

 private:
  size_t segment(double t) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
};

/// Force-deformation curve of one CAVS pressed against a flat object: rises
/// to the LC local maximum, softens through buckling to the SC local minimum,
/// then stiffens again.
class PressCurve {
 public:
  /// A maximal interval on which the curve is monotone. The last piece is
  /// unbounded above.
  struct Piece {
    double d_lo;
    double d_hi;
    bool rising;
  };

  explicit PressCurve(const FrictionParams& params);

  double force(double d) const;
  double stiffness(double d) const;

  const std::vector<Piece>& pieces() const { return pieces_; }
  const MonotoneCubic& interpolant() const { return spline_; }

  /// Force range covered by a piece, [min, max].
  std::pair<double, double> force_range(const Piece& piece) const;

  /// Deformation on `piece` where the curve equals f (f must lie in the
  /// piece's force range).
  double deformation_on(const Piece& piece, double f) const;

 private:
  MonotoneCubic spline_;
  std::vector<Piece> pieces_;
};

/// Pressing force at deformation d (d >= 0); zero at d = 0.
double pressing_force(const FrictionParams& params, double d);

}  // namespace cavs
