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

#include <optional>
#include <vector>

#include "cavs/friction.hpp"
#include "cavs/press_curve.hpp"

namespace cavs {

enum class Finger { Left, Right };
std::string_view to_string(Finger f);

/// Object squeezed between the fingers; a linear spring across its width.
struct ObjectModel {
  double nominal_width = 8.0;        // mm
  double stiffness = 2.0;            // N/mm
  double required_hold_force = 0.3;  // N, tangential load carried when holding
  // Tangential force per finger while the arm drags the fingertips along the
  // object. Unset: chosen from the controller targets (see GripperWorld).
  std::optional<double> slide_demand;

  void validate() const;
};

/// Last equilibrium deformations, used to pick among coexisting roots.
struct BranchMemory {
  double d_left = 0.0;
  double d_right = 0.0;
};

/// One force-balanced configuration for a given finger overlap.
struct Equilibrium {
  double d_left = 0.0;
  double d_right = 0.0;
  double compression = 0.0;  // object compression c, mm
  double force_left = 0.0;   // N
  double force_right = 0.0;  // N
  bool stable = false;
};

struct PlantState {
  double finger_pos_left = 0.0;   // mm, opening positive
  double finger_pos_right = 0.0;  // mm, opening positive
  double d_left = 0.0;
  double d_right = 0.0;
  double f_n_left = 0.0;
  double f_n_right = 0.0;
  double compression = 0.0;
  bool contact = false;
  // The selected root is on a different monotone piece of the press curve
  // than the previous one for at least one finger.
  bool snapped = false;

  BranchMemory memory() const { return {d_left, d_right}; }
  double gap() const { return finger_pos_left + finger_pos_right; }
};

/// Two CAVS in series with the object between position-controlled fingers.
///
/// For an overlap delta = nominal_width - gap the unknowns satisfy
///   d_left + d_right + c = delta,   f(d_left) = f(d_right) = k c,
/// with f the non-monotone press curve, so several roots can coexist. The
/// plant enumerates all of them per pair of monotone press-curve pieces.
class GripperPlant {
 public:
  GripperPlant(const FrictionParams& friction, const ObjectModel& object);

  const PressCurve& press_curve() const { return curve_; }
  const ObjectModel& object() const { return object_; }
  const FrictionParams& friction() const { return friction_; }

  /// Every equilibrium at the given overlap. `external` is an additional
  /// normal load on the right finger (N, positive presses it harder); the
  /// left finger carries f_left = k c - external / 2 and the right
  /// f_right = k c + external / 2, so with external = 0 both forces equal k c.
  std::vector<Equilibrium> equilibria(double overlap,
                                      double external = 0.0) const;

  /// Stable equilibrium nearest to `memory` (all roots if none is stable).
  /// Gap >= nominal width gives the no-contact state.
  PlantState solve(double finger_pos_left, double finger_pos_right,
                   const BranchMemory& memory, double external = 0.0) const;

  /// Index of the monotone press-curve piece holding d.
  size_t piece_of(double d) const;

 private:
  FrictionParams friction_;
  ObjectModel object_;
  PressCurve curve_;
};

PlantState equilibrium_solve(const FrictionParams& params,
                             const ObjectModel& obj, double finger_pos_left,
                             double finger_pos_right,
                             const BranchMemory& memory);

enum class SlideOutcome { Holds, Slides };

struct SlideCheck {
  SlideOutcome left = SlideOutcome::Slides;
  SlideOutcome right = SlideOutcome::Slides;
  double f_max_left = 0.0;
  double f_max_right = 0.0;
  bool grasp_maintained = false;

  bool both_hold() const {
    return left == SlideOutcome::Holds && right == SlideOutcome::Holds;
  }
  bool both_slide() const {
    return left == SlideOutcome::Slides && right == SlideOutcome::Slides;
  }
};

/// Maximum resistible force of one finger; zero without contact.
double finger_max_resistible_force(const FrictionParams& params,
                                   const PlantState& state, Finger finger,
                                   Direction dir);

/// Per-finger hold/slide under `applied_tangential` (N per finger). The grasp
/// is maintained while the combined capacity covers the required hold force.
SlideCheck slide_check(const FrictionParams& params, const ObjectModel& obj,
                       const PlantState& state, Direction dir,
                       double applied_tangential);

}  // namespace cavs
