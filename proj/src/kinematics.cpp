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

#include "cavs/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "cavs/errors.hpp"

namespace cavs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStripOffset = kPi / 6.0;

Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Newton converges well below the acceptance tolerance in a few steps; we
// iterate to this before declaring success so callers see clean residuals.
constexpr double kNewtonTarget = 1e-12;
constexpr double kSeedGridStep = 0.02;       // rad
constexpr double kAnchorStep = 0.05;         // mm
constexpr double kMinContinuationStep = 1e-7;  // mm
constexpr double kBoundaryTolerance = 1e-10;   // mm

struct Angles {
  double theta1;
  double theta2;
};

std::optional<Angles> newton(const CavsGeometry& geom, const AngleBox& box,
                             double d, Angles start) {
  Angles x = start;
  Vec2 res = constraint_residual(geom, x.theta1, x.theta2, d);
  for (int it = 0; it < kMaxNewtonIterations; ++it) {
    if (res.lpNorm<Eigen::Infinity>() < kNewtonTarget) return x;

    Eigen::Matrix2d jac;
    const double h = kJacobianStep;
    jac.col(0) = (constraint_residual(geom, x.theta1 + h, x.theta2, d) -
                  constraint_residual(geom, x.theta1 - h, x.theta2, d)) /
                 (2.0 * h);
    jac.col(1) = (constraint_residual(geom, x.theta1, x.theta2 + h, d) -
                  constraint_residual(geom, x.theta1, x.theta2 - h, d)) /
                 (2.0 * h);
    if (std::abs(jac.determinant()) < 1e-14) return std::nullopt;
    const Vec2 step = -jac.partialPivLu().solve(res);

    // Damped update: halve until the residual decreases inside the box.
    double lambda = 1.0;
    bool accepted = false;
    while (lambda > 1e-6) {
      const Angles cand{x.theta1 + lambda * step.x(),
                        x.theta2 + lambda * step.y()};
      if (box.contains(cand.theta1, cand.theta2)) {
        const Vec2 cand_res = constraint_residual(geom, cand.theta1,
                                                  cand.theta2, d);
        if (cand_res.norm() < res.norm()) {
          x = cand;
          res = cand_res;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  if (res.lpNorm<Eigen::Infinity>() < kResidualTolerance) return x;
  return std::nullopt;
}

bool admissible(const JointState& s) {
  return std::cos(s.gamma) >= 0.0 && s.p_D.y() > 0.0;
}

// Walks from `from` to deformation d, halving the continuation step when a
// Newton solve fails.
std::optional<JointState> continue_to(const CavsGeometry& geom,
                                      const AngleBox& box,
                                      const JointState& from, double d,
                                      int depth = 0) {
  if (auto x = newton(geom, box, d, {from.theta1, from.theta2})) {
    return forward_points(geom, x->theta1, x->theta2);
  }
  if (std::abs(d - from.d) < kMinContinuationStep || depth > 40) {
    return std::nullopt;
  }
  const double mid = 0.5 * (from.d + d);
  auto half = continue_to(geom, box, from, mid, depth + 1);
  if (!half) return std::nullopt;
  return continue_to(geom, box, *half, d, depth + 1);
}

JointState find_initial_state(const CavsGeometry& geom, const AngleBox& box) {
  const int n1 = static_cast<int>(
      std::floor((box.theta1_max - box.theta1_min) / kSeedGridStep)) + 1;
  const int n2 = static_cast<int>(
      std::floor((box.theta2_max - box.theta2_min) / kSeedGridStep)) + 1;
  auto angle1 = [&](int i) { return box.theta1_min + i * kSeedGridStep; };
  auto angle2 = [&](int j) { return box.theta2_min + j * kSeedGridStep; };

  std::vector<double> res2(static_cast<size_t>(n1) * n2);
  auto at = [&](int i, int j) -> double& {
    return res2[static_cast<size_t>(i) * n2 + j];
  };
  Angles ls_best{angle1(0), angle2(0)};
  double ls_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const JointState s = forward_points(geom, angle1(i), angle2(j));
      const double ex = s.p_E.x() - geom.p_E0.x();
      const double ey = s.p_E.y() - geom.p_E0.y();
      const double cx = s.p_C.x() - geom.p_cx0;
      at(i, j) = std::hypot(ey, cx);
      const double ls = ex * ex + ey * ey + cx * cx;
      if (ls < ls_min) {
        ls_min = ls;
        ls_best = {angle1(i), angle2(j)};
      }
    }
  }

  std::vector<Angles> roots;
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const double v = at(i, j);
      if (v > 0.5) continue;
      bool local_min = true;
      for (int di = -1; di <= 1 && local_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          const int a = i + di;
          const int b = j + dj;
          if ((di || dj) && a >= 0 && a < n1 && b >= 0 && b < n2 &&
              at(a, b) < v) {
            local_min = false;
            break;
          }
        }
      }
      if (!local_min) continue;
      if (auto x = newton(geom, box, 0.0, {angle1(i), angle2(j)})) {
        const bool seen = std::any_of(roots.begin(), roots.end(), [&](auto r) {
          return std::abs(r.theta1 - x->theta1) < 1e-6 &&
                 std::abs(r.theta2 - x->theta2) < 1e-6;
        });
        if (!seen) roots.push_back(*x);
      }
    }
  }
  if (roots.empty()) {
    throw GeometryInfeasible(
        "no linkage configuration satisfies the constraints at d = 0");
  }
  const auto nearest = std::min_element(
      roots.begin(), roots.end(), [&](const Angles& a, const Angles& b) {
        return std::hypot(a.theta1 - ls_best.theta1,
                          a.theta2 - ls_best.theta2) <
               std::hypot(b.theta1 - ls_best.theta1,
                          b.theta2 - ls_best.theta2);
      });
  JointState s = forward_points(geom, nearest->theta1, nearest->theta2);
  if (!admissible(s)) {
    throw GeometryInfeasible(
        "undeformed configuration has the red strip facing away from the "
        "camera");
  }
  return s;
}

}  // namespace

void CavsGeometry::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw GeometryInfeasible(what);
  };
  require(std::isfinite(l1) && l1 > 0.0, "geometry.l1 must be positive");
  require(std::isfinite(l2) && l2 > 0.0, "geometry.l2 must be positive");
  require(std::isfinite(l3) && l3 > 0.0, "geometry.l3 must be positive");
  require(std::isfinite(l_r) && l_r > 0.0, "geometry.l_r must be positive");
  require(std::isfinite(d_SC) && d_SC > 0.0, "geometry.d_SC must be positive");
  require(p_A.allFinite() && p_E0.allFinite() && std::isfinite(p_cx0),
          "geometry points must be finite");
}

JointState forward_points(const CavsGeometry& geom, double theta1,
                          double theta2) {
  const double alpha = theta1 + theta2;
  JointState s;
  s.theta1 = theta1;
  s.theta2 = theta2;
  s.p_B = geom.p_A + geom.l1 * unit(theta1);
  s.p_C = s.p_B + geom.l2 * unit(alpha);
  s.p_E = s.p_B + geom.l3 * unit(alpha + kStripOffset);
  if (geom.depth == DepthConvention::kConsistent) {
    s.p_D = s.p_B + geom.l3 * unit(alpha - kStripOffset);
  } else {
    s.p_D = geom.p_A + Vec2(geom.l1 * std::sin(theta1) +
                                geom.l3 * std::sin(alpha - kStripOffset),
                            geom.l1 * std::cos(theta1) +
                                geom.l3 * std::cos(alpha - kStripOffset));
  }
  s.gamma = kPi / 3.0 + alpha;
  s.d = geom.p_E0.y() - s.p_E.y();
  return s;
}

double projected_width_wx(const JointState& state, const CavsGeometry& geom) {
  return geom.l_r * std::cos(state.gamma);
}

Vec2 constraint_residual(const CavsGeometry& geom, double theta1,
                         double theta2, double d) {
  const double alpha = theta1 + theta2;
  const double ey = geom.p_A.y() + geom.l1 * std::sin(theta1) +
                    geom.l3 * std::sin(alpha + kStripOffset);
  const double cx =
      geom.p_A.x() + geom.l1 * std::cos(theta1) + geom.l2 * std::cos(alpha);
  return {(geom.p_E0.y() - ey) - d, cx - geom.p_cx0};
}

LinkageSolver::LinkageSolver(const CavsGeometry& geom, AngleBox box)
    : geom_(geom), box_(box), anchor_step_(kAnchorStep) {
  geom_.validate();
  anchors_.push_back(find_initial_state(geom_, box_));

  // Bounded by the largest possible drop of E below its start height.
  const double d_cap = geom_.p_E0.y() - geom_.p_A.y() + geom_.l1 + geom_.l3;
  auto step_ok = [&](const JointState& from, double d)
      -> std::optional<JointState> {
    auto s = continue_to(geom_, box_, from, d);
    if (s && admissible(*s)) return s;
    return std::nullopt;
  };

  while (true) {
    const JointState& last = anchors_.back();
    const double next = static_cast<double>(anchors_.size()) * anchor_step_;
    if (next > d_cap) break;
    if (auto s = step_ok(last, next)) {
      anchors_.push_back(*s);
      continue;
    }
    // Refine the end of the branch by bisection.
    double lo = last.d;
    double hi = next;
    JointState lo_state = last;
    while (hi - lo > kBoundaryTolerance) {
      const double mid = 0.5 * (lo + hi);
      if (auto s = step_ok(lo_state, mid)) {
        lo = mid;
        lo_state = *s;
      } else {
        hi = mid;
      }
    }
    if (lo > last.d) anchors_.push_back(lo_state);
    break;
  }
  d_max_ = anchors_.back().d;
}

double LinkageSolver::apex_mismatch() const {
  return (initial_state().p_E - geom_.p_E0).norm();
}

JointState LinkageSolver::solve(double d) const {
  if (!(d >= 0.0) || d > d_max_ + kResidualTolerance) {
    throw SolverFailure("deformation " + std::to_string(d) +
                        " mm outside solvable range [0, " +
                        std::to_string(d_max_) + "]");
  }
  d = std::min(d, d_max_);
  auto idx = static_cast<size_t>(std::floor(d / anchor_step_));
  idx = std::min(idx, anchors_.size() - 1);
  while (idx > 0 && anchors_[idx].d > d) --idx;
  const JointState& from = anchors_[idx];
  if (from.d == d) return from;
  auto s = continue_to(geom_, box_, from, d);
  if (!s) {
    throw SolverFailure("linkage solve did not converge at d = " +
                        std::to_string(d) + " mm");
  }
  return *s;
}

JointState solve_joint_angles(const CavsGeometry& geom, double d) {
  return LinkageSolver(geom).solve(d);
}

DeformationLimits deformation_limits(const CavsGeometry& geom) {
  return LinkageSolver(geom).limits();
}

}  // namespace cavs
