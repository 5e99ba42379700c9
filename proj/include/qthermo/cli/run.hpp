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
#include <iosfwd>
#include <optional>
#include <string>

#include "qthermo/cli/config.hpp"

namespace qthermo::cli {

enum ExitCode : int { kExitOk = 0, kExitIo = 1, kExitConfig = 2, kExitNumerical = 3 };

struct RunOptions {
  std::string config_path;
  std::optional<std::string> output_path;
  std::optional<OutputFormat> format;
  std::optional<std::uint64_t> seed;
};

/// Loads the config, runs the scenario, writes the output file and prints a
/// one-line summary to `out`. Diagnostics go to `err`.
int run(const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Same, for an already parsed config. Returns the output file text.
std::string render(const RunConfig& cfg, std::string* summary);

}  // namespace qthermo::cli
