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

#include <cstdint>
#include <string>

#include "cavs/control.hpp"
#include "cavs/friction.hpp"
#include "cavs/kinematics.hpp"
#include "cavs/plant.hpp"
#include "cavs/sensing.hpp"

namespace cavs {

/// Complete run configuration. Every section is optional in the JSON form;
/// missing keys keep the defaults below.
struct Config {
  CavsGeometry geometry;
  CameraModel camera;
  FrictionParams friction;
  ControllerConfig controller;
  ObjectModel object;
  std::uint64_t seed = 1;

  /// Validates every section. Throws ConfigError or GeometryInfeasible.
  void validate() const;
};

/// Parses a JSON config document. Unknown keys are rejected.
Config parse_config(const std::string& text);
/// Reads and parses a file. Throws IoError if it cannot be read.
Config load_config(const std::string& path);

/// Process exit codes of the command-line tool.
enum class ExitStatus : int {
  kSuccess = 0,
  kConfig = 2,
  kSolver = 3,
  kIo = 4,
};

}  // namespace cavs
