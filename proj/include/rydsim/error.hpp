// Copyright 2026 The rydsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace rydsim {

// Interatomic distance outside the range where the asymptotic pair
// potential is meaningful (below the Le Roy radius).
class ValidityError : public std::runtime_error {
 public:
  ValidityError(const std::string& what, double distance_um)
      : std::runtime_error(what), distance_um_(distance_um) {}
  double distance_um() const { return distance_um_; }

 private:
  double distance_um_;
};

class IntegratorFailure : public std::runtime_error {
 public:
  IntegratorFailure(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  // Simulation time (s) at which non-finite amplitudes were detected.
  double time() const { return time_; }

 private:
  double time_;
};

// Schema violation in a configuration or data file. `line` is 1-based, 0 if
// unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace rydsim
