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

#include "qthermo/cli/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "qthermo/cli/config.hpp"

namespace qthermo::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<std::string> trajectory_columns(const EvolutionSpec& spec) {
  std::vector<std::string> cols{"t", "energy", "work_rate"};
  for (const Bath& b : spec.baths) cols.push_back("heat_" + b.name());
  cols.push_back("entropy");
  for (const Bath& b : spec.baths) cols.push_back("flux_" + b.name());
  cols.push_back("entropy_production");
  for (const Bath& b : spec.baths) cols.push_back("rel_entropy_" + b.name());
  if (spec.hamiltonian.dim() == 2) {
    cols.insert(cols.end(), {"bloch_x", "bloch_y", "bloch_z"});
  }
  return cols;
}

Table trajectory_table(const Trajectory& traj, const std::vector<ThermoSample>& samples,
                       const EvolutionSpec& spec) {
  if (traj.states.size() != samples.size()) {
    throw Error(ErrorKind::DimensionMismatch, "trajectory_table: sample count");
  }
  Table t;
  t.columns = trajectory_columns(spec);
  t.rows.reserve(samples.size());
  const bool qubit = spec.hamiltonian.dim() == 2;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const ThermoSample& s = samples[k];
    std::vector<double> row{s.t, s.energy, s.work_rate};
    for (const Bath& b : spec.baths) row.push_back(s.heat_rates.at(b.name()));
    row.push_back(s.entropy);
    for (const Bath& b : spec.baths) row.push_back(s.entropy_flux.at(b.name()));
    row.push_back(s.entropy_production);
    for (const Bath& b : spec.baths) row.push_back(s.relative_entropies.at(b.name()));
    if (qubit) {
      const BlochVector bv = bloch_vector(traj.states[k]);
      row.insert(row.end(), {bv.x, bv.y, bv.z});
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::string> device_report_columns() {
  return {"e_l",    "e_r",    "v",      "n_l",          "n_r",          "gamma",
          "coherence_re", "coherence_im", "coherence_abs", "heat_l", "heat_r", "heat_d",
          "x_l",    "x_d",    "m_ld",   "m_dl",         "entropy_production", "residual"};
}

std::vector<double> device_report_row(const DeviceParams& p, const DeviceReport& r) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  return {p.e_l,
          p.e_r,
          p.v,
          p.n_l,
          p.n_r,
          p.gamma,
          r.coherence.real(),
          r.coherence.imag(),
          std::abs(r.coherence),
          r.heat_l,
          r.heat_r,
          r.heat_d,
          r.x_l.value_or(kNaN),
          r.x_d.value_or(kNaN),
          r.m_ld,
          r.m_dl,
          r.entropy_production,
          r.residual};
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json to_json(const Table& table, const std::string& scenario) {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    for (double v : row) {
      if (std::isfinite(v)) {
        r.push_back(v);
      } else {
        r.push_back(nullptr);
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace qthermo::cli
