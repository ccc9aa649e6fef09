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

#include <numbers>
#include <vector>

#include <Eigen/Core>

namespace cavs {

using Vec2 = Eigen::Vector2d;

/// How the depth coordinate of the red-strip end point D is formed.
///
/// kConsistent places D at B + l3 * (cos, sin)(theta1 + theta2 - pi/6), the
/// mirror image of E about the variable-surface link, so that p_Dy uses the
/// same angle reference as p_E and p_Cx. kPrinted evaluates
/// p_Dy = p_Ay + l1 cos(theta1) + l3 cos(theta1 + theta2 - pi/6), which mixes
/// an angle-from-y reference into an otherwise angle-from-x linkage; under
/// default geometry it starts the ratio curve at 55 %, above the 40 % LC target.
enum class DepthConvention { kConsistent, kPrinted };

/// Planar CAVS linkage. Lengths in mm; defaults are the published design.
struct CavsGeometry {
  double l1 = 4.33;   // pillar link A-B
  double l2 = 5.77;   // variable-surface link B-C
  double l3 = 5.0;    // red-strip link B-D / B-E
  double l_r = 1.5;   // visible red-strip extent
  Vec2 p_A{-5.0, 2.72};
  double p_cx0 = 0.0;
  Vec2 p_E0{2.5, 8.66};
  double d_SC = 3.5;
  DepthConvention depth = DepthConvention::kConsistent;

  /// Throws GeometryInfeasible on non-positive lengths or d_SC.
  void validate() const;
};

/// Linkage configuration at one deformation.
struct JointState {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double d = 0.0;
  Vec2 p_B = Vec2::Zero();
  Vec2 p_C = Vec2::Zero();
  Vec2 p_D = Vec2::Zero();
  Vec2 p_E = Vec2::Zero();
  double gamma = 0.0;
};

/// Admissible joint-angle box; the solver reports failure if an iterate
/// leaves it.
struct AngleBox {
  double theta1_min = 0.0;
  double theta1_max = std::numbers::pi;
  double theta2_min = -std::numbers::pi;
  double theta2_max = 0.0;

  bool contains(double theta1, double theta2) const {
    return theta1 >= theta1_min && theta1 <= theta1_max &&
           theta2 >= theta2_min && theta2 <= theta2_max;
  }
};

struct DeformationLimits {
  double d_min = 0.0;
  double d_max = 0.0;
};

inline constexpr double kResidualTolerance = 1e-9;  // mm
inline constexpr int kMaxNewtonIterations = 200;
inline constexpr double kJacobianStep = 1e-7;       // rad

JointState forward_points(const CavsGeometry& geom, double theta1,
                          double theta2);

/// Red-strip width seen along the optical axis, l_r cos(gamma).
double projected_width_wx(const JointState& state, const CavsGeometry& geom);

/// Residuals of the two constraints held by the solver: deformation of E
/// (d(state) - d) and the central-joint x constraint (p_Cx - p_cx0).
Vec2 constraint_residual(const CavsGeometry& geom, double theta1,
                         double theta2, double d);

/// Branch-following solver for one geometry.
///
/// Construction locates the undeformed configuration inside the angle box
/// and walks the branch up to d_max, storing warm-start anchors. The object
/// is immutable afterwards; solve() is safe to call concurrently.
class LinkageSolver {
 public:
  explicit LinkageSolver(const CavsGeometry& geom, AngleBox box = {});

  const CavsGeometry& geometry() const { return geom_; }
  const AngleBox& box() const { return box_; }
  const JointState& initial_state() const { return anchors_.front(); }
  DeformationLimits limits() const { return {0.0, d_max_}; }

  /// Distance between the undeformed apex E and the nominal p_E0; p_Ex0 is
  /// not one of the solver constraints, so this is reported rather than
  /// driven to zero.
  double apex_mismatch() const;

  /// Throws SolverFailure when d is outside [0, d_max] or Newton fails.
  JointState solve(double d) const;

 private:
  CavsGeometry geom_;
  AngleBox box_;
  double anchor_step_;
  double d_max_ = 0.0;
  std::vector<JointState> anchors_;
};

/// Convenience wrappers; each builds a LinkageSolver.
JointState solve_joint_angles(const CavsGeometry& geom, double d);
DeformationLimits deformation_limits(const CavsGeometry& geom);

}  // namespace cavs
