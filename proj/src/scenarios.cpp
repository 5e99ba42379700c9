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

#include "qthermo/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "qthermo/thermo.hpp"

namespace qthermo {

void validate(const TwoLevelDecoherenceParams& p) {
  if (!(p.gamma > 0.0) || !std::isfinite(p.gamma)) {
    throw Error(ErrorKind::InvalidParams, "gamma must be positive");
  }
  if (!std::isfinite(p.e_level)) throw Error(ErrorKind::InvalidParams, "e_level must be finite");
  if (!std::isfinite(p.x) || !std::isfinite(p.z) || p.x * p.x + p.z * p.z > 1.0 + 1e-12) {
    throw Error(ErrorKind::InvalidBlochVector, "x^2 + z^2 must not exceed 1");
  }
}

DensityMatrix bloch_state(double x, double y, double z) {
  if (x * x + y * y + z * z > 1.0 + 1e-12) {
    throw Error(ErrorKind::InvalidBlochVector, "Bloch vector outside the unit ball");
  }
  Operator rho(2, 2);
  rho << Complex(1.0 + z, 0.0), Complex(x, -y), Complex(x, y), Complex(1.0 - z, 0.0);
  return DensityMatrix(0.5 * rho);
}

BlochVector bloch_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "bloch_vector");
  const Complex off = rho.op()(1, 0);
  const double z = (rho.op()(0, 0) - rho.op()(1, 1)).real();
  return BlochVector{2.0 * off.real(), 2.0 * off.imag(), z};
}

Operator two_level_decoherence_hamiltonian(double e_level) {
  ColumnVector e(2);
  e << 1.0, 1.0;
  e /= std::sqrt(2.0);
  return e_level * outer(e, e);
}

Bath two_level_decoherence_bath(double gamma) {
  return dephasing_bath(computational_basis(2), gamma, "dephasing");
}

double two_level_decoherence_heat(const TwoLevelDecoherenceParams& p) {
  validate(p);
  return heat_rate(two_level_decoherence_hamiltonian(p.e_level), two_level_decoherence_bath(p.gamma),
                   bloch_state(p.x, 0.0, p.z));
}

EvolutionSpec two_level_decoherence_spec(const TwoLevelDecoherenceParams& p, double t_max,
                                         std::optional<double> dt) {
  validate(p);
  return make_evolution_spec(two_level_decoherence_hamiltonian(p.e_level),
                             {two_level_decoherence_bath(p.gamma)}, t_max, dt);
}

void validate(const DeviceParams& p) {
  const bool finite = std::isfinite(p.e_l) && std::isfinite(p.e_r) && std::isfinite(p.v) &&
                      std::isfinite(p.n_l) && std::isfinite(p.n_r) && std::isfinite(p.gamma);
  if (!finite) throw Error(ErrorKind::InvalidParams, "device parameters must be finite");
  if (!(p.e_l > p.e_r)) throw Error(ErrorKind::InvalidParams, "need e_l > e_r");
  if (!(p.n_l > 0.0) || !(p.n_r > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "occupations n_l, n_r must be positive");
  }
  if (!(p.gamma >= 0.0)) throw Error(ErrorKind::InvalidParams, "gamma must be >= 0");
}

DeviceAssembly build_device(const DeviceParams& p) {
  validate(p);
  Operator h = Operator::Zero(kDeviceDim, kDeviceDim);
  h(kDeviceLeft, kDeviceLeft) = p.e_l;
  h(kDeviceRight, kDeviceRight) = p.e_r;
  h(kDeviceLeft, kDeviceRight) = 0.5 * p.v;
  h(kDeviceRight, kDeviceLeft) = 0.5 * p.v;

  std::vector<Bath> baths{left_pump_bath(p.n_l, "left"), right_pump_bath(p.n_r, "right")};
  if (p.gamma > 0.0) {
    std::vector<JumpTerm> terms{
        {p.gamma, matrix_unit(kDeviceDim, kDeviceLeft, kDeviceLeft)},
        {p.gamma, matrix_unit(kDeviceDim, kDeviceRight, kDeviceRight)},
    };
    baths.emplace_back("dephasing", LindbladGenerator(kDeviceDim, std::move(terms)),
                       PinchingClosedForm{computational_basis(kDeviceDim)});
  }
  return DeviceAssembly{p, std::move(h), std::move(baths)};
}

double device_lead_max_rate(const DeviceParams& p) { return 1.0 + std::max(p.n_l, p.n_r); }

ReciprocalCoefficients reciprocal_coefficients(const DeviceAssembly& device, double c) {
  if (device.dephasing() == nullptr) return ReciprocalCoefficients{0.0, 0.0};
  return reciprocal_coefficients(device.hamiltonian, device.left(), *device.dephasing(), c);
}

DeviceReport device_report(const DeviceParams& p, double c) {
  const DeviceAssembly device = build_device(p);
  const SuperOperator liouv = liouvillian(device.hamiltonian, device.baths);
  DensityMatrix nu = steady_state(liouv);

  const Operator& h = device.hamiltonian;
  const double heat_l = heat_rate(h, device.left(), nu);
  const double heat_r = heat_rate(h, device.right(), nu);
  const double heat_d = device.dephasing() ? heat_rate(h, *device.dephasing(), nu) : 0.0;

  std::optional<double> x_l;
  std::optional<double> x_d;
  try {
    const ForceParameters fp = force_parameters(nu);
    x_l = fp.x_l;
    x_d = fp.x_d;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroCoherence) throw;
  }
  const ReciprocalCoefficients m = reciprocal_coefficients(device, c);
  const double production = ness_entropy_production(device.baths, nu);
  const double residual = frobenius_norm(liouv.apply(nu.op()));
  const Complex coherence = nu.op()(kDeviceLeft, kDeviceRight);
  return DeviceReport{std::move(nu), coherence, heat_l, heat_r, heat_d, x_l, x_d,
                      m.m_ld,        m.m_dl,    production, residual};
}

std::vector<SweepPoint> gamma_sweep(const DeviceParams& p, const std::vector<double>& gammas,
                                    double c) {
  if (!std::is_sorted(gammas.begin(), gammas.end())) {
    throw Error(ErrorKind::InvalidParams, "gamma_sweep: gammas must be ascending");
  }
  std::vector<SweepPoint> out;
  out.reserve(gammas.size());
  for (double g : gammas) {
    DeviceParams q = p;
    q.gamma = g;
    try {
      out.push_back(SweepPoint{g, device_report(q, c), {}});
    } catch (const Error& e) {
      if (!e.is_numerical()) throw;
      out.push_back(SweepPoint{g, std::nullopt, e.what()});
    }
  }
  return out;
}

}  // namespace qthermo
