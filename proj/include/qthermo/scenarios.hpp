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

#include <optional>
#include <string>
#include <vector>

#include "qthermo/baths.hpp"
#include "qthermo/dynamics.hpp"
#include "qthermo/onsager.hpp"
#include "qthermo/opcore.hpp"

namespace qthermo {

// ---------------------------------------------------------------------------
// Two-level decoherence heat
// ---------------------------------------------------------------------------

/// rho = (I + x sigma_x + z sigma_z) / 2 dephased in the z basis at rate
/// gamma, with H = E |E><E| and |E> = (|0> + |1>) / sqrt 2.
struct TwoLevelDecoherenceParams {
  double gamma = 1.0;
  double e_level = 1.0;
  double x = 0.5;
  double z = 0.0;
};

/// Throws InvalidBlochVector when x^2 + z^2 > 1 and InvalidParams for a
/// non-positive rate.
void validate(const TwoLevelDecoherenceParams& p);

/// (I + x sigma_x + y sigma_y + z sigma_z) / 2 with sigma_x = |0><1| + |1><0|.
DensityMatrix bloch_state(double x, double y, double z);
struct BlochVector {
  double x, y, z;
};
BlochVector bloch_vector(const DensityMatrix& rho);

Operator two_level_decoherence_hamiltonian(double e_level);
Bath two_level_decoherence_bath(double gamma);

/// Tr[H L_d(rho)] = -gamma E x.
double two_level_decoherence_heat(const TwoLevelDecoherenceParams& p);

EvolutionSpec two_level_decoherence_spec(const TwoLevelDecoherenceParams& p, double t_max,
                                         std::optional<double> dt = std::nullopt);

// ---------------------------------------------------------------------------
// Three-level transport device
// ---------------------------------------------------------------------------

/// Defaults are a working preset, not reference data.
struct DeviceParams {
  double e_l = 1.5;
  double e_r = 1.0;
  double v = 0.4;
  double n_l = 0.6;
  double n_r = 0.2;
  double gamma = 0.3;
};

/// Throws InvalidParams unless e_l > e_r, n_l, n_r > 0 and gamma >= 0.
void validate(const DeviceParams& p);

struct DeviceAssembly {
  DeviceParams params;
  Operator hamiltonian;
  /// left, right and (when gamma > 0) dephasing, in that order.
  std::vector<Bath> baths;

  const Bath& left() const { return baths[0]; }
  const Bath& right() const { return baths[1]; }
  const Bath* dephasing() const { return baths.size() > 2 ? &baths[2] : nullptr; }
};

/// H = E_L|L><L| + E_R|R><R| + V/2 (|L><R| + |R><L|) with the two pump baths
/// and dephasing on the |L>, |R> projectors only.
DeviceAssembly build_device(const DeviceParams& p);

/// Largest jump rate of the two leads: max(1 + n_L, 1 + n_R).
double device_lead_max_rate(const DeviceParams& p);

ReciprocalCoefficients reciprocal_coefficients(const DeviceAssembly& device, double c = 1.0);

struct DeviceReport {
  DensityMatrix nu;
  Complex coherence;  // <L|nu|R>
  double heat_l;
  double heat_r;
  double heat_d;
  /// Absent when the steady state carries no L-R coherence.
  std::optional<double> x_l;
  std::optional<double> x_d;
  double m_ld;
  double m_dl;
  double entropy_production;
  /// ||L_total(nu)||_F
  double residual;
};

/// Throws DegenerateKernel (and the other steady-state errors).
DeviceReport device_report(const DeviceParams& p, double c = 1.0);

struct SweepPoint {
  double gamma;
  std::optional<DeviceReport> report;
  /// Failure message when report is absent.
  std::string error;
};

/// One report per gamma (ascending). Numerical failures are recorded per
/// point and the sweep continues.
std::vector<SweepPoint> gamma_sweep(const DeviceParams& p, const std::vector<double>& gammas,
                                    double c = 1.0);

}  // namespace qthermo
