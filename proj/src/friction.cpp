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

#include "cavs/friction.hpp"

#include <cmath>
#include <string>

#include "cavs/errors.hpp"

namespace cavs {

namespace {

size_t row(ContactState s) { return s == ContactState::SC ? 1 : 0; }
size_t col(Direction d) { return d == Direction::Longitudinal ? 1 : 0; }

}  // namespace

std::string_view to_string(ContactState s) {
  switch (s) {
    case ContactState::LC: return "LC";
    case ContactState::Transition: return "Transition";
    case ContactState::SC: return "SC";
  }
  return "?";
}

std::string_view to_string(Direction d) {
  return d == Direction::Lateral ? "lateral" : "longitudinal";
}

ContactState contact_state_from_string(std::string_view s) {
  if (s == "LC") return ContactState::LC;
  if (s == "SC") return ContactState::SC;
  if (s == "Transition") return ContactState::Transition;
  throw ConfigError("unknown contact state '" + std::string(s) + "'");
}

void FrictionParams::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(d_LC_end > 0.0 && d_LC_end < d_SC_start,
          "friction: need 0 < d_LC_end < d_SC_start");
  require(sc_reference_deformation > d_SC_start,
          "friction: sc_reference_deformation must exceed d_SC_start");
  require(f_local_min > 0.0 && f_local_max > f_local_min,
          "friction: need f_local_max > f_local_min > 0");
  require(sc_reference_force > f_local_min,
          "friction: sc_reference_force must exceed f_local_min");
  require(kinetic_fraction > 0.0 && kinetic_fraction <= 1.0,
          "friction: kinetic_fraction must be in (0, 1]");
  for (size_t s = 0; s < 2; ++s) {
    for (size_t d = 0; d < 2; ++d) {
      require(std::isfinite(mu[s][d]) && mu[s][d] > 0.0,
              "friction: mu entries must be positive");
      require(std::isfinite(adhesion[s][d]) && adhesion[s][d] >= 0.0,
              "friction: adhesion must be non-negative");
    }
  }
  for (size_t d = 0; d < 2; ++d) {
    require(mu[1][d] > 2.0 * mu[0][d],
            "friction: SC slope must exceed twice the LC slope");
  }
  for (size_t s = 0; s < 2; ++s) {
    const double ratio = mu[s][1] / mu[s][0];
    require(ratio >= 1.6 && ratio <= 2.4,
            "friction: longitudinal/lateral slope ratio must be in [1.6, 2.4]");
  }
}

ContactState classify_contact_state(const FrictionParams& params, double d) {
  if (d <= params.d_LC_end) return ContactState::LC;
  if (d >= params.d_SC_start) return ContactState::SC;
  return ContactState::Transition;
}

double ecmsf(double f_max, double f_nslip) {
  if (!(f_nslip > 0.0)) {
    throw DivisionDomain("ECMSF needs a positive normal force at slip");
  }
  return f_max / f_nslip;
}

FrictionCoefficients coefficients(const FrictionParams& params,
                                  ContactState state, Direction dir) {
  if (state == ContactState::Transition) {
    throw std::invalid_argument(
        "transition coefficients depend on deformation; use coefficients_at");
  }
  return {params.mu[row(state)][col(dir)],
          params.adhesion[row(state)][col(dir)]};
}

FrictionCoefficients coefficients_at(const FrictionParams& params, double d,
                                     Direction dir) {
  const ContactState state = classify_contact_state(params, d);
  if (state != ContactState::Transition) {
    return coefficients(params, state, dir);
  }
  const double t =
      (d - params.d_LC_end) / (params.d_SC_start - params.d_LC_end);
  const auto lc = coefficients(params, ContactState::LC, dir);
  const auto sc = coefficients(params, ContactState::SC, dir);
  return {(1.0 - t) * lc.mu + t * sc.mu,
          (1.0 - t) * lc.adhesion + t * sc.adhesion};
}

double max_resistible_force(const FrictionParams& params, ContactState state,
                            Direction dir, double f_nslip) {
  const auto c = coefficients(params, state, dir);
  return c.mu * f_nslip + c.adhesion;
}

double max_resistible_force_at(const FrictionParams& params, double d,
                               Direction dir, double f_nslip) {
  const auto c = coefficients_at(params, d, dir);
  return c.mu * f_nslip + c.adhesion;
}

}  // namespace cavs
