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

#include <stdexcept>
#include <string>

namespace cavs {

// Base for every error raised by the library. The CLI maps subclasses onto
// exit codes (see ExitStatus in config.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter record failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Newton iteration did not converge or left the admissible angle box.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

class GeometryInfeasible : public Error {
 public:
  using Error::Error;
};

// Red strip point D is not in front of the camera (p_Dy <= 0).
class BehindCamera : public Error {
 public:
  using Error::Error;
};

class NotCalibrated : public Error {
 public:
  using Error::Error;
};

class DivisionDomain : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cavs
