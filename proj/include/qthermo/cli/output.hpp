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

#include <string>
#include <vector>

#include <json.hpp>

#include "qthermo/dynamics.hpp"
#include "qthermo/scenarios.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo::cli {

/// Shortest text with 17 significant digits; nan and inf spelled as such.
std::string format_double(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// t, energy, work_rate, heat_<b>..., entropy, flux_<b>..., entropy_production,
/// rel_entropy_<b>..., then bloch_x, bloch_y, bloch_z for qubits. Baths in spec order.
std::vector<std::string> trajectory_columns(const EvolutionSpec& spec);
Table trajectory_table(const Trajectory& traj, const std::vector<ThermoSample>& samples,
                       const EvolutionSpec& spec);

std::vector<std::string> device_report_columns();
std::vector<double> device_report_row(const DeviceParams& p, const DeviceReport& r);

std::string to_csv(const Table& table);
/// {"scenario": ..., "columns": [...], "rows": [[...], ...]}; non-finite values become null.
nlohmann::ordered_json to_json(const Table& table, const std::string& scenario);

/// Throws IoError.
void write_file(const std::string& path, const std::string& content);

}  // namespace qthermo::cli
