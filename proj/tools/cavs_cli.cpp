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

// Command-line front end for the CAVS fingertip simulator.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cavs/commands.hpp"
#include "cavs/config.hpp"
#include "cavs/errors.hpp"
#include "cavs/scenario.hpp"

namespace {

using cavs::ExitStatus;

struct Common {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "JSON config (defaults if absent)");
  sub->add_option("--out", c.out_path, "Output file (stdout if absent)");
  sub->add_option("--seed", c.seed, "Overrides the config seed");
}

cavs::Config load(const Common& c) {
  cavs::Config cfg =
      c.config_path.empty() ? cavs::parse_config("{}")
                            : cavs::load_config(c.config_path);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

void emit(const Common& c, const std::string& bytes) {
  if (c.out_path.empty()) {
    std::cout << bytes;
    std::cout.flush();
    if (!std::cout) throw cavs::IoError("write to stdout failed");
  } else {
    cavs::write_file_atomic(c.out_path, bytes);
  }
}

int fail(ExitStatus code, const std::string& msg) {
  std::string line = msg;
  for (char& ch : line) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  std::cerr << "cavs_cli: " << line << '\n';
  return static_cast<int>(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CAVS variable-friction fingertip simulator"};
  app.require_subcommand(1);

  Common common;

  double rc_min = 0.0, rc_max = 3.5, rc_step = 0.05;
  auto* ratio = app.add_subcommand("ratio-curve", "Red-area ratio versus deformation");
  add_common(ratio, common);
  ratio->add_option("--d-min", rc_min, "mm");
  ratio->add_option("--d-max", rc_max, "mm");
  ratio->add_option("--step", rc_step, "mm");

  double pc_max = 5.0, pc_step = 0.05;
  auto* press = app.add_subcommand("press-curve", "Pressing force versus deformation");
  add_common(press, common);
  press->add_option("--d-max", pc_max, "mm");
  press->add_option("--step", pc_step, "mm");

  double an_min = 0.1, an_max = 3.0, an_step = 0.1;
  auto* aniso = app.add_subcommand("anisotropy", "Maximum resistible force table");
  add_common(aniso, common);
  aniso->add_option("--f-min", an_min, "N");
  aniso->add_option("--f-max", an_max, "N");
  aniso->add_option("--step", an_step, "N");

  std::string scenario_path;
  std::string summary_path;
  auto* demo = app.add_subcommand("control-demo", "Closed-loop gripper scenario");
  add_common(demo, common);
  demo->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  demo->add_option("--summary", summary_path,
                   "Summary file (stdout when --out is given)");

  double render_d = 3.5;
  auto* render = app.add_subcommand("render", "Synthetic camera frame (PPM)");
  add_common(render, common);
  render->add_option("--d", render_d, "mm");

  double solve_d = 0.0;
  auto* solve = app.add_subcommand("solve", "Joint angles and ratio at one deformation");
  add_common(solve, common);
  solve->add_option("--d", solve_d, "mm")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(ExitStatus::kConfig, e.what());
  }

  try {
    const cavs::Config cfg = load(common);
    if (*ratio) {
      emit(common, cavs::ratio_curve_csv(cfg, rc_min, rc_max, rc_step));
    } else if (*press) {
      emit(common, cavs::press_curve_csv(cfg, pc_max, pc_step));
    } else if (*aniso) {
      emit(common, cavs::anisotropy_csv(cfg, an_min, an_max, an_step));
    } else if (*demo) {
      const cavs::Scenario sc =
          cavs::parse_scenario(cavs::read_file(scenario_path));
      const cavs::ScenarioResult res = cavs::run_control_demo(cfg, sc);
      std::ostringstream csv, summary;
      cavs::write_time_series_csv(csv, res.records);
      cavs::write_summary(summary, res);
      if (!summary_path.empty()) {
        cavs::write_file_atomic(summary_path, summary.str());
      }
      emit(common, csv.str());
      if (!common.out_path.empty() && summary_path.empty()) {
        std::cout << summary.str();
      }
    } else if (*render) {
      std::ostringstream ppm;
      cavs::write_ppm(ppm, cavs::render_frame(cfg, render_d));
      emit(common, ppm.str());
    } else if (*solve) {
      emit(common, cavs::solve_report(cfg, solve_d));
    }
  } catch (const cavs::IoError& e) {
    return fail(ExitStatus::kIo, e.what());
  } catch (const cavs::SolverFailure& e) {
    return fail(ExitStatus::kSolver, e.what());
  } catch (const cavs::BehindCamera& e) {
    return fail(ExitStatus::kSolver, e.what());
  } catch (const cavs::Error& e) {
    return fail(ExitStatus::kConfig, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ExitStatus::kConfig, e.what());
  }
  return static_cast<int>(ExitStatus::kSuccess);
}
