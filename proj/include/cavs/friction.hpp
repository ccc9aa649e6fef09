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

#include <array>
#include <string_view>

namespace cavs {

enum class ContactState { LC, Transition, SC };
enum class Direction { Lateral, Longitudinal };

std::string_view to_string(ContactState s);
std::string_view to_string(Direction d);
ContactState contact_state_from_string(std::string_view s);

/// Linear maximum-resistible-force model f_MAX = mu * f_N + adhesion.
struct FrictionCoefficients {
  double mu = 0.0;
  double adhesion = 0.0;
};

/// Load-dependent friction of one CAVS.
///
/// The press-curve anchors are the measured local extrema. Coefficient
/// magnitudes are assumed configuration; validation only enforces the
/// measured ratios (SC slope over twice LC, longitudinal about twice
/// lateral) and a non-negative adhesion intercept.
struct FrictionParams {
  double d_LC_end = 1.9;     // mm, local maximum of the press curve
  double d_SC_start = 3.3;   // mm, local minimum
  double f_local_max = 1.43;  // N
  double f_local_min = 0.97;  // N
  // Point on the rising SC segment the curve passes through; beyond it the
  // curve continues linearly.
  double sc_reference_deformation = 3.5;  // mm
  double sc_reference_force = 1.5;        // N

  // [state: LC, SC][direction: lateral, longitudinal]
  std::array<std::array<double, 2>, 2> mu{{{0.5, 1.0}, {1.1, 2.2}}};
  std::array<std::array<double, 2>, 2> adhesion{{{0.15, 0.15}, {0.15, 0.15}}};
  double kinetic_fraction = 0.8;

  /// Throws ConfigError.
  void validate() const;
};

ContactState classify_contact_state(const FrictionParams& params, double d);

/// Equivalent coefficient of maximum static friction, f_max / f_nslip.
/// Throws DivisionDomain if f_nslip <= 0.
double ecmsf(double f_max, double f_nslip);

/// Row of the coefficient table. Transition is rejected here because it
/// needs a position inside the band; use coefficients_at.
FrictionCoefficients coefficients(const FrictionParams& params,
                                  ContactState state, Direction dir);

/// Coefficients at deformation d; linear blend of the LC and SC rows inside
/// the transition band.
FrictionCoefficients coefficients_at(const FrictionParams& params, double d,
                                     Direction dir);

double max_resistible_force(const FrictionParams& params, ContactState state,
                            Direction dir, double f_nslip);
double max_resistible_force_at(const FrictionParams& params, double d,
                               Direction dir, double f_nslip);

}  // namespace cavs
