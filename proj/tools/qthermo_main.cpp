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

#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qthermo/cli/run.hpp"

int main(int argc, char** argv) {
  using namespace qthermo::cli;

  CLI::App app{"qthermo: open-system thermodynamics scenarios"};
  app.require_subcommand(1);

  RunOptions opts;
  std::string output;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Csv;
  const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::Csv},
                                                    {"json", OutputFormat::Json}};

  CLI::App* run_cmd = app.add_subcommand("run", "run the scenario described by a config file");
  run_cmd->add_option("config", opts.config_path, "YAML config path")->required();
  auto* out_opt = run_cmd->add_option("--output,-o", output, "output file (overrides output.path)");
  auto* fmt_opt = run_cmd->add_option("--format", format, "csv or json")
                      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  auto* seed_opt = run_cmd->add_option("--seed", seed, "RNG seed (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*out_opt) opts.output_path = output;
  if (*fmt_opt) opts.format = format;
  if (*seed_opt) opts.seed = seed;
  return run(opts, std::cout, std::cerr);
}
