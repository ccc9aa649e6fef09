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

#include "cavs/plant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cavs/errors.hpp"

namespace cavs {

namespace {

constexpr int kForceScan = 48;
constexpr double kRootTolerance = 1e-14;  // N
constexpr double kDuplicate = 1e-9;       // mm

}  // namespace

std::string_view to_string(Finger f) {
  return f == Finger::Left ? "left" : "right";
}

void ObjectModel::validate() const {
  if (!(nominal_width > 0.0)) throw ConfigError("object.nominal_width must be positive");
  if (!(stiffness > 0.0)) throw ConfigError("object.stiffness must be positive");
  if (!(required_hold_force >= 0.0)) {
    throw ConfigError("object.required_hold_force must be non-negative");
  }
  if (slide_demand && !(*slide_demand >= 0.0)) {
    throw ConfigError("object.slide_demand must be non-negative");
  }
}

GripperPlant::GripperPlant(const FrictionParams& friction,
                           const ObjectModel& object)
    : friction_(friction), object_(object), curve_(friction) {
  friction_.validate();
  object_.validate();
}

size_t GripperPlant::piece_of(double d) const {
  const auto& pieces = curve_.pieces();
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (d < pieces[i].d_hi) return i;
  }
  return pieces.size() - 1;
}

std::vector<Equilibrium> GripperPlant::equilibria(double overlap,
                                                  double external) const {
  std::vector<Equilibrium> roots;
  if (!(overlap > 0.0)) return roots;

  const double k = object_.stiffness;
  const double half = 0.5 * external;
  const auto& pieces = curve_.pieces();

  auto make = [&](const PressCurve::Piece& pl, const PressCurve::Piece& pr,
                  double force) {
    Equilibrium e;
    e.force_left = force - half;
    e.force_right = force + half;
    e.d_left = curve_.deformation_on(pl, e.force_left);
    e.d_right = curve_.deformation_on(pr, e.force_right);
    e.compression = force / k;
    return e;
  };
  auto closure = [&](const PressCurve::Piece& pl, const PressCurve::Piece& pr,
                     double force) {
    const Equilibrium e = make(pl, pr, force);
    return e.d_left + e.d_right + e.compression - overlap;
  };

  for (const auto& pl : pieces) {
    for (const auto& pr : pieces) {
      // Object-force interval on which both fingers stay on their pieces.
      const auto [l_lo, l_hi] = curve_.force_range(pl);
      const auto [r_lo, r_hi] = curve_.force_range(pr);
      double lo = std::max({l_lo + half, r_lo - half, std::abs(half)});
      // c <= overlap bounds the object force.
      double hi = std::min({l_hi + half, r_hi - half, k * overlap});
      if (!(hi >= lo)) continue;

      const int n = (pl.rising && pr.rising) ? 1 : kForceScan;
      double f0 = lo;
      double g0 = closure(pl, pr, f0);
      for (int i = 1; i <= n; ++i) {
        const double f1 = lo + (hi - lo) * i / n;
        const double g1 = closure(pl, pr, f1);
        double root = std::numeric_limits<double>::quiet_NaN();
        if (g0 == 0.0) {
          root = f0;
        } else if (g1 == 0.0 && i == n) {
          root = f1;
        } else if ((g0 < 0.0) != (g1 < 0.0)) {
          double a = f0;
          double b = f1;
          double ga = g0;
          for (int it = 0; it < 200 && b - a > kRootTolerance; ++it) {
            const double m = 0.5 * (a + b);
            const double gm = closure(pl, pr, m);
            if ((gm < 0.0) == (ga < 0.0)) {
              a = m;
              ga = gm;
            } else {
              b = m;
            }
          }
          root = 0.5 * (a + b);
        }
        if (!std::isnan(root)) {
          Equilibrium e = make(pl, pr, root);
          const bool seen =
              std::any_of(roots.begin(), roots.end(), [&](const auto& r) {
                return std::abs(r.d_left - e.d_left) < kDuplicate &&
                       std::abs(r.d_right - e.d_right) < kDuplicate;
              });
          if (!seen) {
            // Positive-definite Hessian of the series energy at fixed overlap.
            const double kl = curve_.stiffness(e.d_left);
            const double kr = curve_.stiffness(e.d_right);
            e.stable = (kl + k > 0.0) && (kl * kr + k * (kl + kr) > -1e-12);
            roots.push_back(e);
          }
        }
        f0 = f1;
        g0 = g1;
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    return a.d_left != b.d_left ? a.d_left < b.d_left : a.d_right < b.d_right;
  });
  return roots;
}

PlantState GripperPlant::solve(double finger_pos_left, double finger_pos_right,
                               const BranchMemory& memory,
                               double external) const {
  PlantState s;
  s.finger_pos_left = finger_pos_left;
  s.finger_pos_right = finger_pos_right;
  const double overlap = object_.nominal_width - s.gap();
  if (!(overlap > 0.0)) {
    s.snapped = piece_of(memory.d_left) != 0 || piece_of(memory.d_right) != 0;
    return s;
  }

  const auto roots = equilibria(overlap, external);
  if (roots.empty()) {
    throw SolverFailure("no equilibrium for overlap " +
                        std::to_string(overlap) + " mm");
  }
  const bool any_stable = std::any_of(roots.begin(), roots.end(),
                                      [](const auto& r) { return r.stable; });
  auto distance = [&](const Equilibrium& e) {
    return std::abs(e.d_left - memory.d_left) +
           std::abs(e.d_right - memory.d_right);
  };
  const Equilibrium* best = nullptr;
  for (const auto& e : roots) {
    if (any_stable && !e.stable) continue;
    if (!best) {
      best = &e;
      continue;
    }
    const double de = distance(e);
    const double db = distance(*best);
    if (de < db - 1e-12) {
      best = &e;
    } else if (std::abs(de - db) <= 1e-12) {
      const double te = e.d_left + e.d_right;
      const double tb = best->d_left + best->d_right;
      if (te < tb - 1e-12 || (std::abs(te - tb) <= 1e-12 &&
                              e.d_left < best->d_left)) {
        best = &e;
      }
    }
  }
  s.d_left = best->d_left;
  s.d_right = best->d_right;
  s.f_n_left = best->force_left;
  s.f_n_right = best->force_right;
  s.compression = best->compression;
  s.contact = true;
  s.snapped = piece_of(s.d_left) != piece_of(memory.d_left) ||
              piece_of(s.d_right) != piece_of(memory.d_right);
  return s;
}

PlantState equilibrium_solve(const FrictionParams& params,
                             const ObjectModel& obj, double finger_pos_left,
                             double finger_pos_right,
                             const BranchMemory& memory) {
  return GripperPlant(params, obj)
      .solve(finger_pos_left, finger_pos_right, memory);
}

double finger_max_resistible_force(const FrictionParams& params,
                                   const PlantState& state, Finger finger,
                                   Direction dir) {
  if (!state.contact) return 0.0;
  const bool left = finger == Finger::Left;
  return max_resistible_force_at(params, left ? state.d_left : state.d_right,
                                 dir, left ? state.f_n_left : state.f_n_right);
}

SlideCheck slide_check(const FrictionParams& params, const ObjectModel& obj,
                       const PlantState& state, Direction dir,
                       double applied_tangential) {
  SlideCheck out;
  out.f_max_left = finger_max_resistible_force(params, state, Finger::Left, dir);
  out.f_max_right =
      finger_max_resistible_force(params, state, Finger::Right, dir);
  out.left = applied_tangential <= out.f_max_left ? SlideOutcome::Holds
                                                  : SlideOutcome::Slides;
  out.right = applied_tangential <= out.f_max_right ? SlideOutcome::Holds
                                                    : SlideOutcome::Slides;
  out.grasp_maintained =
      out.f_max_left + out.f_max_right >= obj.required_hold_force;
  return out;
}

}  // namespace cavs
