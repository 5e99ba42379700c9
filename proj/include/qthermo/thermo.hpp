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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qthermo/baths.hpp"
#include "qthermo/dynamics.hpp"
#include "qthermo/opcore.hpp"

namespace qthermo {

// Energies in the Hamiltonian's units, entropies in nats, rates per unit time.

/// Tr[H rho]. Throws NotHermitian.
double energy(const Operator& h, const DensityMatrix& rho);
/// Tr[dH/dt rho]. Throws NotHermitian.
double work_rate(const Operator& h_dot, const DensityMatrix& rho);
/// Tr[H L_b(rho)]; positive means energy flowing into the system.
double heat_rate(const Operator& h, const Bath& bath, const DensityMatrix& rho);

/// -sum lambda ln lambda over the support.
double von_neumann_entropy(const DensityMatrix& rho);

/// Whether supp(rho) lies inside supp(sigma).
bool support_contained(const DensityMatrix& rho, const DensityMatrix& sigma);

/// R[rho || B] = Tr[rho log rho] - Tr[rho log B(rho)]; +infinity when the
/// support of rho is not contained in that of B(rho).
double relative_entropy_to_bath(const DensityMatrix& rho, const Bath& bath);

/// Entropy flux to the bath, Tr[L_b(rho) log B_b(rho)]. With this sign the
/// balance reads dS/dt = -sum_b flux_b + P. Throws SupportViolation.
double entropy_flux(const Bath& bath, const DensityMatrix& rho);

/// dS/dt = -Tr[L(rho) log rho] summed over baths. The commutator term
/// contributes nothing.
double entropy_rate(const DensityMatrix& rho, const std::vector<Bath>& baths);

/// P = sum_b Tr[L_b(rho) (log B_b(rho) - log rho)] >= 0. Throws SupportViolation.
double entropy_production(const DensityMatrix& rho, const std::vector<Bath>& baths);

struct ThermoSample {
  double t = 0.0;
  double energy = 0.0;
  double work_rate = 0.0;
  std::map<std::string, double> heat_rates;
  double entropy = 0.0;
  std::map<std::string, double> entropy_flux;
  double entropy_production = 0.0;
  std::map<std::string, double> relative_entropies;
  /// Set when some bath's stationary state does not cover the support of
  /// the state; the affected flux and production fields are NaN.
  bool support_violation = false;
};

/// One sample per trajectory point. The schedule is piecewise constant, so
/// the work rate is zero away from switch instants.
std::vector<ThermoSample> sample_thermodynamics(const Trajectory& traj, const EvolutionSpec& spec);

/// Fourth-order centered difference of values at index k (needs k-2..k+2).
double centered_derivative(const std::vector<double>& values, double dt, std::size_t k);

/// Indices whose five-point stencil neither leaves the trajectory nor
/// straddles a Hamiltonian switch.
std::vector<std::size_t> interior_indices(const Trajectory& traj, const EvolutionSpec& spec);

/// |dE/dt - W - sum Q_b| at each interior index; nullopt elsewhere.
std::vector<std::optional<double>> first_law_residuals(const std::vector<ThermoSample>& samples,
                                                       const Trajectory& traj,
                                                       const EvolutionSpec& spec);

/// |dS/dt + sum flux_b - P| at each interior index, with dS/dt from finite
/// differences of the entropy column; nullopt elsewhere or on support loss.
std::vector<std::optional<double>> entropy_balance_residuals(
    const std::vector<ThermoSample>& samples, const Trajectory& traj, const EvolutionSpec& spec);

}  // namespace qthermo
