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
#include <string>
#include <utility>
#include <vector>

#include "qthermo/baths.hpp"
#include "qthermo/opcore.hpp"

namespace qthermo {

struct ForceFlowPair {
  std::string bath_name;
  Operator flow;   // J_b = L_b(nu)
  Operator force;  // X_b = log B_b(nu) - log nu
};

/// J_b = L_b(nu), hermitized.
Operator flow(const Bath& bath, const DensityMatrix& nu);

/// X_b = log B_b(nu) - log nu. Throws SupportViolation.
Operator force(const Bath& bath, const DensityMatrix& nu);

ForceFlowPair force_flow_pair(const Bath& bath, const DensityMatrix& nu);

/// P = sum_b Tr[J_b X_b], evaluated through Hilbert-Schmidt pairings of the
/// flow and force operators.
double ness_entropy_production(const std::vector<Bath>& baths, const DensityMatrix& nu);

/// M_{b,a} = c L_b o L_a^dagger, with L_a^dagger the Heisenberg-picture generator.
SuperOperator onsager_superop(const Bath& b, const Bath& a, double c = 1.0);

using BathPair = std::pair<std::string, std::string>;  // (b, a)

/// All M_{b,a} over a set of named baths.
struct LinearResponse {
  std::map<BathPair, SuperOperator> pairs;
  double coupling_constant = 1.0;

  const SuperOperator& at(const std::string& b, const std::string& a) const;
};

LinearResponse build_linear_response(const std::vector<Bath>& baths, double c = 1.0);

/// max over pairs of ||M_{b,a} - (M_{a,b})^dagger||_F / ||M_{b,a}||_F (0 for
/// vanishing M_{b,a}).
double reciprocity_defect(const LinearResponse& lr);

/// J~_b = sum_a M_{b,a}(X_a) for every b named in forces. Throws MissingPair.
std::map<std::string, Operator> linear_flow_prediction(const LinearResponse& lr,
                                                       const std::map<std::string, Operator>& forces);

/// Both orderings of the bilinear entropy production:
/// flow_side = sum Tr[M_{b,a}(X_a) X_b], with the superoperator acting on the
/// forces, and heisenberg_side = sum Tr[M_{b,a}^dagger(X_b) X_a], with the
/// Heisenberg picture of the same superoperator acting on the conjugate force.
struct BilinearProduction {
  double flow_side;
  double heisenberg_side;
};
BilinearProduction linear_entropy_production(const LinearResponse& lr,
                                             const std::map<std::string, Operator>& forces);

/// Coherence force parameters of the three-level device.
struct ForceParameters {
  double x_d;
  double x_l;
};

/// x_l = <L|log nu|R> + <R|log nu|L>; x_d = -x_l, the L-R content of
/// X_d = log B_d(nu) - log nu. Throws ZeroCoherence when <L|nu|R> vanishes.
ForceParameters force_parameters(const DensityMatrix& nu);

struct ReciprocalCoefficients {
  double m_ld;
  double m_dl;
};

/// Coefficients of (|L><R| + |R><L|) in c L_d^dagger(L_l(H)) and
/// c L_l^dagger(L_d(H)).
ReciprocalCoefficients reciprocal_coefficients(const Operator& hamiltonian, const Bath& left,
                                               const Bath& dephasing, double c = 1.0);

}  // namespace qthermo
