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

#include "qthermo/thermo.hpp"

#include <cmath>
#include <limits>

namespace qthermo {

namespace {

constexpr double kSupportLeak = 1e-10;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_hermitian(const Operator& h, const char* what) {
  require_square(h, what);
  if (!is_hermitian(h)) throw Error(ErrorKind::NotHermitian, what);
}

struct BathView {
  DensityMatrix stationary;
  bool supported;
};

BathView view(const Bath& bath, const DensityMatrix& rho) {
  DensityMatrix b = stationary_map(bath, rho);
  const bool ok = support_contained(rho, b);
  return BathView{std::move(b), ok};
}

}  // namespace

double energy(const Operator& h, const DensityMatrix& rho) {
  require_hermitian(h, "energy");
  require_same_dim(h, rho.op(), "energy");
  return trace_product(h, rho.op()).real();
}

double work_rate(const Operator& h_dot, const DensityMatrix& rho) {
  require_hermitian(h_dot, "work_rate");
  require_same_dim(h_dot, rho.op(), "work_rate");
  return trace_product(h_dot, rho.op()).real();
}

double heat_rate(const Operator& h, const Bath& bath, const DensityMatrix& rho) {
  require_hermitian(h, "heat_rate");
  require_same_dim(h, rho.op(), "heat_rate");
  return trace_product(h, bath.generator().apply(rho.op())).real();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Spectrum& s = rho.spectrum();
  const double cut = support_threshold(s);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    const double p = s.values(i);
    if (p > cut) entropy -= p * std::log(p);
  }
  return entropy;
}

bool support_contained(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.op(), sigma.op(), "support_contained");
  const Spectrum& s = sigma.spectrum();
  const double cut = support_threshold(s);
  double leak = 0.0;
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    if (s.values(i) > cut) continue;
    const auto v = s.vectors.col(i);
    leak += v.dot(rho.op() * v).real();
  }
  return leak <= kSupportLeak;
}

double relative_entropy_to_bath(const DensityMatrix& rho, const Bath& bath) {
  const BathView b = view(bath, rho);
  if (!b.supported) return std::numeric_limits<double>::infinity();
  const double neg_entropy = -von_neumann_entropy(rho);
  const Operator log_b = matrix_log_on_support(b.stationary.spectrum());
  return neg_entropy - trace_product(rho.op(), log_b).real();
}

double entropy_flux(const Bath& bath, const DensityMatrix& rho) {
  const BathView b = view(bath, rho);
  if (!b.supported) {
    throw Error(ErrorKind::SupportViolation, "entropy_flux: bath '" + bath.name() + "'");
  }
  const Operator log_b = matrix_log_on_support(b.stationary.spectrum());
  return trace_product(bath.generator().apply(rho.op()), log_b).real();
}

double entropy_rate(const DensityMatrix& rho, const std::vector<Bath>& baths) {
  const Operator log_rho = matrix_log_on_support(rho.spectrum());
  double rate = 0.0;
  for (const auto& b : baths) rate -= trace_product(b.generator().apply(rho.op()), log_rho).real();
  return rate;
}

double entropy_production(const DensityMatrix& rho, const std::vector<Bath>& baths) {
  const Operator log_rho = matrix_log_on_support(rho.spectrum());
  double production = 0.0;
  for (const auto& bath : baths) {
    const BathView b = view(bath, rho);
    if (!b.supported) {
      throw Error(ErrorKind::SupportViolation, "entropy_production: bath '" + bath.name() + "'");
    }
    const Operator force = matrix_log_on_support(b.stationary.spectrum()) - log_rho;
    production += trace_product(bath.generator().apply(rho.op()), force).real();
  }
  return production;
}

std::vector<ThermoSample> sample_thermodynamics(const Trajectory& traj, const EvolutionSpec& spec) {
  std::vector<ThermoSample> samples;
  samples.reserve(traj.states.size());
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const DensityMatrix& rho = traj.states[k];
    const double t = traj.times[k];
    const Operator& h = spec.hamiltonian.at(t);
    const Operator log_rho = matrix_log_on_support(rho.spectrum());
    const double neg_entropy = trace_product(rho.op(), log_rho).real();

    ThermoSample s;
    s.t = t;
    s.energy = energy(h, rho);
    s.work_rate = 0.0;
    s.entropy = von_neumann_entropy(rho);
    s.entropy_production = 0.0;
    for (const auto& bath : spec.baths) {
      const Operator flow = bath.generator().apply(rho.op());
      s.heat_rates[bath.name()] = trace_product(h, flow).real();
      const BathView b = view(bath, rho);
      if (!b.supported) {
        s.support_violation = true;
        s.entropy_flux[bath.name()] = kNaN;
        s.relative_entropies[bath.name()] = std::numeric_limits<double>::infinity();
        s.entropy_production = kNaN;
        continue;
      }
      const Operator log_b = matrix_log_on_support(b.stationary.spectrum());
      s.entropy_flux[bath.name()] = trace_product(flow, log_b).real();
      s.relative_entropies[bath.name()] = neg_entropy - trace_product(rho.op(), log_b).real();
      s.entropy_production += trace_product(flow, log_b - log_rho).real();
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

double centered_derivative(const std::vector<double>& values, double dt, std::size_t k) {
  if (k < 2 || k + 2 >= values.size()) {
    throw Error(ErrorKind::InvalidParams, "centered_derivative: stencil leaves the series");
  }
  return (-values[k + 2] + 8.0 * values[k + 1] - 8.0 * values[k - 1] + values[k - 2]) / (12.0 * dt);
}

std::vector<std::size_t> interior_indices(const Trajectory& traj, const EvolutionSpec& spec) {
  std::vector<std::size_t> out;
  const auto switches = spec.hamiltonian.switch_times();
  const std::size_t n = traj.times.size();
  for (std::size_t k = 2; k + 2 < n; ++k) {
    const double lo = traj.times[k - 2];
    const double hi = traj.times[k + 2];
    bool straddles = false;
    for (double ts : switches) straddles = straddles || (ts > lo && ts <= hi);
    if (!straddles) out.push_back(k);
  }
  return out;
}

std::vector<std::optional<double>> first_law_residuals(const std::vector<ThermoSample>& samples,
                                                       const Trajectory& traj,
                                                       const EvolutionSpec& spec) {
  std::vector<double> energies;
  energies.reserve(samples.size());
  for (const auto& s : samples) energies.push_back(s.energy);
  std::vector<std::optional<double>> out(samples.size());
  for (std::size_t k : interior_indices(traj, spec)) {
    double heat = 0.0;
    for (const auto& [name, q] : samples[k].heat_rates) heat += q;
    out[k] = std::abs(centered_derivative(energies, spec.dt, k) - samples[k].work_rate - heat);
  }
  return out;
}

std::vector<std::optional<double>> entropy_balance_residuals(
    const std::vector<ThermoSample>& samples, const Trajectory& traj, const EvolutionSpec& spec) {
  std::vector<double> entropies;
  entropies.reserve(samples.size());
  for (const auto& s : samples) entropies.push_back(s.entropy);
  std::vector<std::optional<double>> out(samples.size());
  for (std::size_t k : interior_indices(traj, spec)) {
    if (samples[k].support_violation) continue;
    double flux = 0.0;
    for (const auto& [name, phi] : samples[k].entropy_flux) flux += phi;
    out[k] = std::abs(centered_derivative(entropies, spec.dt, k) + flux -
                      samples[k].entropy_production);
  }
  return out;
}

}  // namespace qthermo
