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

// Acceptance gate: one PASS/FAIL line per primary criterion, with the
// measured quantities and the wall time against the stated budget. Exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cavs/commands.hpp"
#include "cavs/control.hpp"
#include "cavs/friction.hpp"
#include "cavs/kinematics.hpp"
#include "cavs/plant.hpp"
#include "cavs/press_curve.hpp"
#include "cavs/scenario.hpp"
#include "cavs/sensing.hpp"
#include "oracles.hpp"

namespace {

using cavs::CameraModel;
using cavs::CavsGeometry;
using cavs::ContactState;
using cavs::Finger;

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, double budget_s,
               const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
  const bool ok = v.pass && secs < budget_s;
  failures += !ok;
  std::printf("%s  %-28s %s [%.2f s / %.0f s]\n", ok ? "PASS" : "FAIL", name,
              v.detail.c_str(), secs, budget_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

oracle::Root nearest(const std::vector<oracle::Root>& roots,
                     const oracle::Root& to) {
  return *std::min_element(roots.begin(), roots.end(),
                           [&](const auto& a, const auto& b) {
                             return std::hypot(a.t1 - to.t1, a.t2 - to.t2) <
                                    std::hypot(b.t1 - to.t1, b.t2 - to.t2);
                           });
}

cavs::Scenario bundled() {
  return cavs::parse_scenario(
      cavs::read_file(std::string(CAVS_DATA_DIR) + "/tube_scenario.json"));
}

// Runs one controller mode from a symmetric start and reports the first tick
// both fingers are in the widened band and whether they ever leave it.
struct LoopOutcome {
  int settle = -1;
  bool left_band = false;
};

LoopOutcome run_loop(double d0, ContactState mode, int ticks) {
  cavs::GripperWorld w(CavsGeometry{}, CameraModel{}, cavs::FrictionParams{},
                       cavs::ControllerConfig{}, cavs::ObjectModel{}, 1);
  w.place_symmetric(d0);
  cavs::ScenarioStep step;
  step.name = "loop";
  step.target_mode = mode;
  step.duration_s = 0.1 * ticks;
  const auto recs = w.run_step(step, 0.1);
  const double band = 100.0 * (w.controller().epsilon + w.ratio_step_bound());
  const double target = 100.0 * w.controller().target(mode);
  LoopOutcome out;
  for (int k = 0; k < ticks; ++k) {
    const bool in = std::abs(recs[2 * k].r_img_pct - target) <= band &&
                    std::abs(recs[2 * k + 1].r_img_pct - target) <= band;
    if (in && out.settle < 0) out.settle = k;
    if (out.settle >= 0 && !in) out.left_band = true;
  }
  return out;
}

}  // namespace

int main() {
  const CavsGeometry table;

  criterion("normalization", 1.0, [&] {
    const cavs::RedAreaSensor s(table, CameraModel{});
    const double err = std::abs(s.ratio(table.d_SC) - 1.0);
    return Verdict{err < 1e-9, fmt("|r(d_SC) - 1| = %.3g", err)};
  });

  criterion("ratio-curve shape", 5.0, [&] {
    const cavs::RedAreaSensor s(table, CameraModel{});
    bool increasing = true;
    double prev = s.ratio(0.0);
    for (int i = 1; i <= 350; ++i) {
      const double r = s.ratio(0.01 * i);
      increasing = increasing && r > prev;
      prev = r;
    }
    const double d_lc = cavs::FrictionParams{}.d_LC_end;
    const double r_lc = s.ratio(d_lc);
    const bool in_range = r_lc >= 0.40 && r_lc <= 0.48;
    std::string detail = std::string("increasing=") +
                         (increasing ? "yes" : "no") +
                         fmt(", r(%.2f mm)", d_lc) +
                         fmt(" = %.4f (want [0.40, 0.48])", r_lc) +
                         fmt(", r = 0.44 at d = %.3f mm",
                             s.deformation_for_ratio(0.44));
    return Verdict{increasing && in_range, detail};
  });

  criterion("solver correctness", 30.0, [&] {
    const cavs::LinkageSolver solver(table);
    double worst_res = 0.0;
    for (int i = 1; i <= 350; ++i) {
      const double d = 0.01 * i;
      const auto st = solver.solve(d);
      const auto r = cavs::constraint_residual(table, st.theta1, st.theta2, d);
      worst_res = std::max(worst_res, r.cwiseAbs().maxCoeff());
    }
    const oracle::GridSearch grid{oracle::Linkage{}};
    const auto roots0 = grid.roots(0.0);
    if (roots0.size() != 1) {
      return Verdict{false, "grid oracle: d = 0 root not unique"};
    }
    oracle::Root prev = roots0[0];
    double worst_angle = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double d = table.d_SC * i / 49.0;
      const auto roots = grid.roots(d);
      if (roots.empty()) return Verdict{false, fmt("grid: no root at %.3f", d)};
      prev = nearest(roots, prev);
      const auto st = solver.solve(d);
      worst_angle = std::max({worst_angle, std::abs(st.theta1 - prev.t1),
                              std::abs(st.theta2 - prev.t2)});
    }
    return Verdict{worst_res < 1e-9 && worst_angle < 1e-3,
                   fmt("max residual %.3g mm", worst_res) +
                       fmt(", max grid deviation %.3g rad", worst_angle)};
  });

  criterion("press-curve anchors", 1.0, [&] {
    const cavs::FrictionParams p;
    const cavs::PressCurve c(p);
    const double e1 = std::abs(c.force(1.9) - 1.43);
    const double e2 = std::abs(c.force(3.3) - 0.97);
    const double s1 = std::abs(c.stiffness(1.9));
    const double s2 = std::abs(c.stiffness(3.3));
    const double f0 = cavs::pressing_force(p, 0.0);
    const bool ok = e1 < 1e-6 && e2 < 1e-6 && s1 < 1e-8 && s2 < 1e-8 &&
                    f0 == 0.0;
    return Verdict{ok, fmt("|df| %.2g", std::max(e1, e2)) +
                           fmt(", |f'| %.2g", std::max(s1, s2)) +
                           fmt(", f(0) = %g", f0)};
  });

  criterion("friction ratios", 1.0, [&] {
    const cavs::FrictionParams p;
    using cavs::Direction;
    double min_sc_lc = INFINITY, min_ratio = INFINITY, max_ratio = 0.0;
    for (auto dir : {Direction::Lateral, Direction::Longitudinal}) {
      min_sc_lc = std::min(min_sc_lc,
                           cavs::coefficients(p, ContactState::SC, dir).mu /
                               cavs::coefficients(p, ContactState::LC, dir).mu);
    }
    for (auto st : {ContactState::LC, ContactState::SC}) {
      const double r = cavs::coefficients(p, st, Direction::Longitudinal).mu /
                       cavs::coefficients(p, st, Direction::Lateral).mu;
      min_ratio = std::min(min_ratio, r);
      max_ratio = std::max(max_ratio, r);
    }
    bool decreasing = true;
    for (auto st : {ContactState::LC, ContactState::SC}) {
      for (auto dir : {Direction::Lateral, Direction::Longitudinal}) {
        double prev = INFINITY;
        for (int i = 1; i <= 1000; ++i) {
          const double f = 0.005 * i;
          const double e = cavs::ecmsf(
              cavs::max_resistible_force(p, st, dir, f), f);
          decreasing = decreasing && e < prev;
          prev = e;
        }
      }
    }
    const bool ok = min_sc_lc > 2.0 && min_ratio >= 1.6 && max_ratio <= 2.4 &&
                    decreasing;
    return Verdict{ok, fmt("SC/LC slope >= %.3g", min_sc_lc) +
                           fmt(", long/lat in [%.3g,", min_ratio) +
                           fmt(" %.3g]", max_ratio) +
                           ", ECMSF decreasing=" + (decreasing ? "yes" : "no")};
  });

  criterion("deadband branch table", 1.0, [&] {
    const cavs::ControllerConfig c;
    const bool table_ok =
        cavs::control_step(c, 1.00, ContactState::LC).delta_d_f == 0.25 &&
        cavs::control_step(c, 0.403, ContactState::LC).delta_d_f == 0.0 &&
        cavs::control_step(c, 0.20, ContactState::SC).delta_d_f == -0.5;
    long bad = 0, n = 0;
    for (long i = 0; i <= 150000; ++i) {
      const double r = 1e-5 * i;
      for (auto mode : {ContactState::LC, ContactState::SC}) {
        const double t = c.target(mode);
        const double cmd = cavs::control_step(c, r, mode).delta_d_f;
        const int fired = (r - t > c.epsilon) + (r - t < -c.epsilon) +
                          (std::abs(r - t) <= c.epsilon);
        bad += fired != 1 ||
               cmd != oracle::deadband(r, t, c.epsilon, c.step_open,
                                       c.step_close) ||
               (std::abs(r - t) <= c.epsilon && cmd != 0.0);
        ++n;
      }
    }
    return Verdict{table_ok && bad == 0,
                   std::string("examples ") + (table_ok ? "exact" : "WRONG") +
                       ", fuzz " + std::to_string(n) + " cases, " +
                       std::to_string(bad) + " violations"};
  });

  criterion("closed-loop convergence", 5.0, [&] {
    const auto lc = run_loop(table.d_SC, ContactState::LC, 500);
    const auto sc = run_loop(0.5, ContactState::SC, 500);
    const bool ok = lc.settle >= 0 && lc.settle < 50 && !lc.left_band &&
                    sc.settle >= 0 && sc.settle < 50 && !sc.left_band;
    return Verdict{ok, "to LC: band at tick " + std::to_string(lc.settle) +
                           (lc.left_band ? " then LEFT" : ", stays") +
                           "; to SC: band at tick " +
                           std::to_string(sc.settle) +
                           (sc.left_band ? " then LEFT" : ", stays")};
  });

  criterion("sensing pipeline", 5.0, [&] {
    const cavs::RedAreaSensor s(table, CameraModel{});
    const double w_sc = *s.camera().w_SCimg;
    double worst_px = 0.0;
    for (int i = 0; i <= 70; ++i) {
      const double d = 0.05 * i;
      const double det = cavs::detect_red_ratio(s.render(d), s.camera());
      worst_px = std::max(worst_px, std::abs(det - s.ratio(d)) * w_sc);
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    double worst_inv = 0.0;
    for (int k = 0; k < 10; ++k) {
      CavsGeometry g = table;
      g.l_r *= u(rng);
      CameraModel cam;
      cam.focal_px *= u(rng);
      const cavs::RedAreaSensor sl(g, CameraModel{});
      const cavs::RedAreaSensor sf(table, cam);
      for (double d : {0.0, 0.5, 1.0, 1.9, 2.5, 3.3}) {
        worst_inv = std::max({worst_inv, std::abs(sl.ratio(d) - s.ratio(d)),
                              std::abs(sf.ratio(d) - s.ratio(d))});
      }
    }
    // "Exact" up to the last bits of the two divisions in the ratio.
    const bool ok = worst_px <= 2.0 && worst_inv <= 4e-16;
    return Verdict{ok, fmt("detector error %.3g px (<= 2)", worst_px) +
                           fmt(", scaling deviation %.3g", worst_inv)};
  });

  criterion("snap-through hysteresis", 30.0, [&] {
    const cavs::GripperPlant plant{cavs::FrictionParams{}, cavs::ObjectModel{}};
    const oracle::Press f;
    const double w = plant.object().nominal_width;
    const double k = plant.object().stiffness;
    const double h = 0.02;
    const int n = static_cast<int>(std::lround(9.0 / h));
    std::vector<double> up_f(n + 1), up_dl(n + 1), dn_f(n + 1), dn_dl(n + 1);
    cavs::PlantState st;
    int mismatched = 0, snaps = 0;
    auto visit = [&](int i, std::vector<double>& force,
                     std::vector<double>& dl) {
      const double overlap = h * i;
      st = plant.solve(0.5 * (w - overlap), 0.5 * (w - overlap), st.memory());
      snaps += st.snapped;
      force[i] = st.compression * k;
      dl[i] = st.d_left;
      if (overlap <= 0.0) return;
      const auto lib = plant.equilibria(overlap);
      const auto ref = oracle::plant_roots(f, k, overlap);
      bool same = lib.size() == ref.size();
      for (const auto& r : ref) {
        same = same && std::any_of(lib.begin(), lib.end(), [&](auto& e) {
                 return std::abs(e.d_left - r.d_left) < 1e-6 &&
                        std::abs(e.d_right - r.d_right) < 1e-6;
               });
      }
      mismatched += !same;
    };
    for (int i = 0; i <= n; ++i) visit(i, up_f, up_dl);
    for (int i = n; i >= 0; --i) visit(i, dn_f, dn_dl);
    double area = 0.0, path_gap = 0.0;
    for (int i = 0; i < n; ++i) {
      area += 0.5 * ((up_f[i] - dn_f[i]) + (up_f[i + 1] - dn_f[i + 1])) * h;
      path_gap = std::max(path_gap, std::abs(up_dl[i] - dn_dl[i]));
    }
    const bool ok = area > 0.0 && path_gap > 1e-3 && mismatched == 0;
    return Verdict{ok, fmt("loop area %.4g N*mm", area) +
                           fmt(", max path difference %.3g mm", path_gap) +
                           ", snaps " + std::to_string(snaps) +
                           ", oracle mismatches " + std::to_string(mismatched)};
  });

  criterion("scenario reproduction", 10.0, [&] {
    const cavs::Scenario sc = bundled();
    const cavs::Config cfg;
    const auto res = cavs::run_control_demo(cfg, sc);
    bool phases = res.summary.size() == sc.steps.size();
    for (const auto& s : res.summary) {
      phases = phases && s.settle_tick >= 0 &&
               (s.target_mode == ContactState::SC ? s.grasp_maintained
                                                  : s.slide_achieved);
    }
    std::ostringstream a, b;
    cavs::write_time_series_csv(a, res.records);
    cavs::write_time_series_csv(b, cavs::run_control_demo(cfg, sc).records);
    const bool deterministic = a.str() == b.str();

    // Disturbance isolation against the same run without the disturbance.
    size_t step_idx = 0, offset = 0;
    for (; step_idx < sc.steps.size(); ++step_idx) {
      if (sc.steps[step_idx].disturbance.kind != cavs::Disturbance::Kind::None) {
        break;
      }
      offset += 2 * static_cast<size_t>(res.summary[step_idx].ticks);
    }
    if (step_idx == sc.steps.size()) {
      return Verdict{false, "bundled scenario has no disturbance"};
    }
    const auto& dist = sc.steps[step_idx].disturbance;
    const size_t own = dist.finger == Finger::Left ? 0 : 1;
    cavs::Scenario quiet = sc;
    quiet.steps[step_idx].disturbance = {};
    const auto base = cavs::run_control_demo(cfg, quiet);
    const size_t end =
        offset + 2 * static_cast<size_t>(res.summary[step_idx].ticks);
    const size_t onset =
        offset + 2 * static_cast<size_t>(std::lround(dist.start_s / sc.tick_dt_s));
    int own_diff = 0, other_diff = 0, first_other = -1;
    for (size_t j = onset; j < end; ++j) {
      const bool differs = res.records[j].delta_df_mm != base.records[j].delta_df_mm;
      if (j % 2 == own) {
        own_diff += differs;
      } else if (differs) {
        ++other_diff;
        if (first_other < 0) first_other = static_cast<int>((j - onset) / 2);
      }
    }
    const bool isolated = own_diff > 0 && other_diff == 0;
    std::string detail = std::string("phases ") + (phases ? "ok" : "WRONG") +
                         ", deterministic " + (deterministic ? "yes" : "no") +
                         ", disturbed finger re-commands on " +
                         std::to_string(own_diff) + " ticks, other finger on " +
                         std::to_string(other_diff) + " ticks";
    if (first_other >= 0) {
      detail += " (first " + std::to_string(first_other) + " ticks after onset)";
    }
    return Verdict{phases && deterministic && isolated, detail};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
