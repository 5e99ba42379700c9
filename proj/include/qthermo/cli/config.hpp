// Copyright 2026 The qthermo Authors
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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qthermo/scenarios.hpp"

namespace qthermo::cli {

enum class Scenario { TwoLevelDecoherence, DeviceSteady, DeviceTrajectory, GammaSweep };
enum class OutputFormat { Csv, Json };

std::string to_string(Scenario s);
std::string to_string(OutputFormat f);

struct IntegratorConfig {
  std::optional<double> dt;  // default_time_step when absent
  double t_max;
};

/// Initial state of a device trajectory.
enum class DeviceInit { Mixed, Ground, Random };

struct RunConfig {
  Scenario scenario = Scenario::DeviceSteady;
  std::uint64_t seed = 0;
  double onsager_c = 1.0;
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::string> output_path;
  std::optional<IntegratorConfig> integrator;

  TwoLevelDecoherenceParams two_level;
  DeviceParams device;
  DeviceInit init = DeviceInit::Mixed;
  std::vector<double> gammas;  // gamma-sweep only
};

/// Malformed or invalid configuration. `line` is 1-based, 0 if unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& msg);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

}  // namespace qthermo::cli
