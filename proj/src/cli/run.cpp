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

#include "qthermo/cli/run.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "qthermo/cli/output.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo::cli {

namespace {

std::string short_num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

DensityMatrix seeded_state(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Operator g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = Complex(n(rng), n(rng));
  Operator rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(hermitize(rho));
}

std::string emit(const Table& table, const RunConfig& cfg, nlohmann::ordered_json extra = {}) {
  if (cfg.format == OutputFormat::Csv) return to_csv(table);
  nlohmann::ordered_json j = to_json(table, to_string(cfg.scenario));
  if (!extra.is_null()) {
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  }
  return j.dump() + "\n";
}

std::string run_trajectory(const RunConfig& cfg, const EvolutionSpec& spec,
                           const DensityMatrix& rho0, std::string* summary) {
  const Trajectory traj = propagate(rho0, spec);
  const auto samples = sample_thermodynamics(traj, spec);
  const Table table = trajectory_table(traj, samples, spec);
  if (summary) {
    const ThermoSample& last = samples.back();
    *summary = to_string(cfg.scenario) + ": " + std::to_string(samples.size()) +
               " samples to t=" + short_num(last.t) + ", dt=" + short_num(spec.dt) +
               ", final energy=" + short_num(last.energy) +
               ", entropy_production=" + short_num(last.entropy_production);
  }
  return emit(table, cfg);
}

std::string run_two_level(const RunConfig& cfg, std::string* summary) {
  const TwoLevelDecoherenceParams& p = cfg.two_level;
  if (cfg.integrator) {
    const EvolutionSpec spec = two_level_decoherence_spec(p, cfg.integrator->t_max, cfg.integrator->dt);
    return run_trajectory(cfg, spec, bloch_state(p.x, 0.0, p.z), summary);
  }
  const double q = two_level_decoherence_heat(p);
  Table table;
  table.columns = {"gamma", "e_level", "x", "z", "heat_d", "heat_magnitude"};
  table.rows.push_back({p.gamma, p.e_level, p.x, p.z, q, std::abs(q)});
  if (summary) {
    *summary = "two-level-decoherence: gamma=" + short_num(p.gamma) + " e_level=" +
               short_num(p.e_level) + " x=" + short_num(p.x) + " heat_d=" + short_num(q);
  }
  return emit(table, cfg);
}

std::string run_device_steady(const RunConfig& cfg, std::string* summary) {
  const DeviceReport r = device_report(cfg.device, cfg.onsager_c);
  Table table;
  table.columns = device_report_columns();
  table.rows.push_back(device_report_row(cfg.device, r));
  if (summary) {
    *summary = "device-steady: |coherence|=" + short_num(std::abs(r.coherence)) +
               " heat_l=" + short_num(r.heat_l) + " heat_r=" + short_num(r.heat_r) +
               " heat_d=" + short_num(r.heat_d) + " m_ld=" + short_num(r.m_ld) +
               " m_dl=" + short_num(r.m_dl) + " P=" + short_num(r.entropy_production);
  }
  return emit(table, cfg);
}

std::string run_device_trajectory(const RunConfig& cfg, std::string* summary) {
  const DeviceAssembly dev = build_device(cfg.device);
  const EvolutionSpec spec =
      make_evolution_spec(dev.hamiltonian, dev.baths, cfg.integrator->t_max, cfg.integrator->dt);
  DensityMatrix rho0 = DensityMatrix::maximally_mixed(kDeviceDim);
  if (cfg.init == DeviceInit::Ground) rho0 = DensityMatrix::basis_state(kDeviceDim, kDeviceGround);
  if (cfg.init == DeviceInit::Random) rho0 = seeded_state(kDeviceDim, cfg.seed);
  return run_trajectory(cfg, spec, rho0, summary);
}

std::string run_sweep(const RunConfig& cfg, std::string* summary) {
  const auto points = gamma_sweep(cfg.device, cfg.gammas, cfg.onsager_c);
  Table table;
  table.columns = device_report_columns();
  table.columns.push_back("ok");
  auto errors = nlohmann::ordered_json::array();
  std::size_t failed = 0;
  for (const SweepPoint& pt : points) {
    DeviceParams p = cfg.device;
    p.gamma = pt.gamma;
    std::vector<double> row;
    if (pt.report) {
      row = device_report_row(p, *pt.report);
      row.push_back(1.0);
    } else {
      ++failed;
      row = {p.e_l, p.e_r, p.v, p.n_l, p.n_r, p.gamma};
      row.resize(table.columns.size() - 1, std::numeric_limits<double>::quiet_NaN());
      row.push_back(0.0);
      errors.push_back({{"gamma", pt.gamma}, {"error", pt.error}});
    }
    table.rows.push_back(std::move(row));
  }
  if (summary) {
    std::string s = "gamma-sweep: " + std::to_string(points.size()) + " points";
    if (failed) s += " (" + std::to_string(failed) + " failed)";
    const auto& first = points.front().report;
    const auto& last = points.back().report;
    if (first && last) {
      s += ", |coherence| " + short_num(std::abs(first->coherence)) + " at gamma=" +
           short_num(points.front().gamma) + " -> " + short_num(std::abs(last->coherence)) +
           " at gamma=" + short_num(points.back().gamma);
    }
    *summary = s;
  }
  nlohmann::ordered_json extra;
  if (!errors.empty()) extra["errors"] = errors;
  return emit(table, cfg, extra);
}

}  // namespace

std::string render(const RunConfig& cfg, std::string* summary) {
  switch (cfg.scenario) {
    case Scenario::TwoLevelDecoherence: return run_two_level(cfg, summary);
    case Scenario::DeviceSteady: return run_device_steady(cfg, summary);
    case Scenario::DeviceTrajectory: return run_device_trajectory(cfg, summary);
    case Scenario::GammaSweep: return run_sweep(cfg, summary);
  }
  return {};
}

int run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(opts.config_path);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (opts.output_path) cfg.output_path = opts.output_path;
  if (opts.format) cfg.format = *opts.format;
  if (opts.seed) cfg.seed = *opts.seed;
  if (!cfg.output_path || cfg.output_path->empty()) {
    err << "config error: " << opts.config_path
        << ": no output path (set output.path or pass --output)\n";
    return kExitConfig;
  }

  std::string summary;
  std::string content;
  try {
    content = render(cfg, &summary);
  } catch (const Error& e) {
    if (e.is_numerical()) {
      err << "numerical failure (" << to_string(e.kind()) << "): " << e.what() << '\n';
      return kExitNumerical;
    }
    err << "config error: " << opts.config_path << ": " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    write_file(*cfg.output_path, content);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  out << summary << " -> " << *cfg.output_path << '\n';
  return kExitOk;
}

}  // namespace qthermo::cli
