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

#include "qthermo/onsager.hpp"

#include <algorithm>
#include <cmath>

#include "qthermo/thermo.hpp"

namespace qthermo {

namespace {

constexpr double kCoherenceFloor = 1e-12;

Operator lr_sector() {
  Operator k = matrix_unit(kDeviceDim, kDeviceLeft, kDeviceRight) +
               matrix_unit(kDeviceDim, kDeviceRight, kDeviceLeft);
  return k;
}

double sector_coefficient(const Operator& y) {
  const Operator k = lr_sector();
  return (hs_inner(k, y) / hs_inner(k, k)).real();
}

}  // namespace

Operator flow(const Bath& bath, const DensityMatrix& nu) {
  if (bath.dim() != nu.dim()) throw Error(ErrorKind::DimensionMismatch, "flow");
  return hermitize(bath.generator().apply(nu.op()));
}

Operator force(const Bath& bath, const DensityMatrix& nu) {
  if (bath.dim() != nu.dim()) throw Error(ErrorKind::DimensionMismatch, "force");
  const DensityMatrix b = stationary_map(bath, nu);
  if (!support_contained(nu, b)) {
    throw Error(ErrorKind::SupportViolation, "force: bath '" + bath.name() + "'");
  }
  return hermitize(matrix_log_on_support(b.spectrum()) - matrix_log_on_support(nu.spectrum()));
}

ForceFlowPair force_flow_pair(const Bath& bath, const DensityMatrix& nu) {
  return ForceFlowPair{bath.name(), flow(bath, nu), force(bath, nu)};
}

double ness_entropy_production(const std::vector<Bath>& baths, const DensityMatrix& nu) {
  Complex total = 0.0;
  for (const auto& bath : baths) {
    const ForceFlowPair p = force_flow_pair(bath, nu);
    total += hs_inner(p.flow, p.force);
  }
  if (std::abs(total.imag()) > 1e-10) {
    throw Error(ErrorKind::NotHermitian, "ness_entropy_production: complex pairing");
  }
  return total.real();
}

SuperOperator onsager_superop(const Bath& b, const Bath& a, double c) {
  if (b.dim() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "onsager_superop");
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidParams, "coupling constant must be positive");
  return superop_from_action(b.dim(), [&](const Operator& x) {
    return Operator(c * b.generator().apply(a.generator().apply_adjoint(x)));
  });
}

const SuperOperator& LinearResponse::at(const std::string& b, const std::string& a) const {
  auto it = pairs.find({b, a});
  if (it == pairs.end()) throw Error(ErrorKind::MissingPair, "(" + b + ", " + a + ")");
  return it->second;
}

LinearResponse build_linear_response(const std::vector<Bath>& baths, double c) {
  LinearResponse lr;
  lr.coupling_constant = c;
  for (const auto& b : baths) {
    for (const auto& a : baths) lr.pairs.emplace(BathPair{b.name(), a.name()}, onsager_superop(b, a, c));
  }
  return lr;
}

double reciprocity_defect(const LinearResponse& lr) {
  double worst = 0.0;
  for (const auto& [key, m_ba] : lr.pairs) {
    const SuperOperator& m_ab = lr.at(key.second, key.first);
    const double diff = (m_ba.matrix() - m_ab.matrix().adjoint()).norm();
    const double scale = m_ba.matrix().norm();
    worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
  }
  return worst;
}

std::map<std::string, Operator> linear_flow_prediction(
    const LinearResponse& lr, const std::map<std::string, Operator>& forces) {
  std::map<std::string, Operator> predicted;
  for (const auto& [b, unused] : forces) {
    Operator j;
    for (const auto& [a, x_a] : forces) {
      const Operator term = lr.at(b, a).apply(x_a);
      j = j.size() == 0 ? term : Operator(j + term);
    }
    predicted.emplace(b, std::move(j));
  }
  return predicted;
}

BilinearProduction linear_entropy_production(const LinearResponse& lr,
                                             const std::map<std::string, Operator>& forces) {
  Complex flow_side = 0.0;
  Complex heisenberg_side = 0.0;
  for (const auto& [b, x_b] : forces) {
    for (const auto& [a, x_a] : forces) {
      const SuperOperator& m_ba = lr.at(b, a);
      flow_side += trace_product(m_ba.apply(x_a), x_b);
      heisenberg_side += trace_product(superop_hs_adjoint(m_ba).apply(x_b), x_a);
    }
  }
  return BilinearProduction{flow_side.real(), heisenberg_side.real()};
}

ForceParameters force_parameters(const DensityMatrix& nu) {
  if (nu.dim() != kDeviceDim) throw Error(ErrorKind::DimensionMismatch, "force_parameters");
  if (std::abs(nu.op()(kDeviceLeft, kDeviceRight)) <= kCoherenceFloor) {
    throw Error(ErrorKind::ZeroCoherence, "force_parameters: <L|nu|R> vanishes");
  }
  const Operator log_nu = matrix_log_on_support(nu.spectrum());
  const double x_l =
      (log_nu(kDeviceLeft, kDeviceRight) + log_nu(kDeviceRight, kDeviceLeft)).real();
  return ForceParameters{-x_l, x_l};
}

ReciprocalCoefficients reciprocal_coefficients(const Operator& hamiltonian, const Bath& left,
                                               const Bath& dephasing, double c) {
  require_same_dim(hamiltonian, identity(kDeviceDim), "reciprocal_coefficients");
  const auto& gl = left.generator();
  const auto& gd = dephasing.generator();
  const Operator ld = gd.apply_adjoint(gl.apply(hamiltonian));
  const Operator dl = gl.apply_adjoint(gd.apply(hamiltonian));
  return ReciprocalCoefficients{c * sector_coefficient(ld), c * sector_coefficient(dl)};
}

}  // namespace qthermo
