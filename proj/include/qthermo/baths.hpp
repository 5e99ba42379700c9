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

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qthermo/opcore.hpp"

namespace qthermo {

struct JumpTerm {
  double rate;  // inverse time, >= 0
  Operator jump;
};

/// Dissipator sum_k rate_k (2 A_k a A_k^dagger - A_k^dagger A_k a - a A_k^dagger A_k).
/// There is no 1/2 on the anticommutator: a pure dephasing term of rate g
/// damps coherences at 2g.
class LindbladGenerator {
 public:
  /// Throws DimensionMismatch for a jump of the wrong size and InvalidParams
  /// for a negative or non-finite rate.
  explicit LindbladGenerator(int dim, std::vector<JumpTerm> terms = {});

  int dim() const noexcept { return dim_; }
  const std::vector<JumpTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  Operator apply(const Operator& a) const;
  /// Heisenberg picture: X -> sum_k rate_k (2 A^dagger X A - A^dagger A X - X A^dagger A).
  Operator apply_adjoint(const Operator& x) const;
  SuperOperator superoperator() const;

  double max_rate() const;
  /// Smallest strictly positive rate; 0 when there is none.
  double min_positive_rate() const;

 private:
  int dim_;
  std::vector<JumpTerm> terms_;
};

Operator apply_generator(const LindbladGenerator& gen, const Operator& a);

/// Stationary state e^{-beta H} / Z, independent of the input state.
struct GibbsClosedForm {
  Operator hamiltonian;
  double beta;
};

/// Sum_j <j|rho|j> |j><j| over an orthonormal basis.
struct PinchingClosedForm {
  std::vector<ColumnVector> basis;
};

/// Evolve under the bath generator alone until ||L(rho_t)||_F < tol.
/// t_max <= 0 selects 1e3 / (smallest nonzero rate).
struct PropagateToFixedPoint {
  double tol = 1e-11;
  double t_max = 0.0;
};

using StationaryStrategy = std::variant<GibbsClosedForm, PinchingClosedForm, PropagateToFixedPoint>;

namespace detail {
struct RelaxationLadder;
}

/// A Lindblad generator together with the strategy that realizes its
/// infinite-time stationary map. The name labels flows and forces.
class Bath {
 public:
  Bath(std::string name, LindbladGenerator generator, StationaryStrategy strategy);

  const std::string& name() const noexcept { return name_; }
  const LindbladGenerator& generator() const noexcept { return generator_; }
  const StationaryStrategy& strategy() const noexcept { return strategy_; }
  int dim() const noexcept { return generator_.dim(); }

  /// Present only for PropagateToFixedPoint.
  const detail::RelaxationLadder* ladder() const noexcept { return ladder_.get(); }

 private:
  std::string name_;
  LindbladGenerator generator_;
  StationaryStrategy strategy_;
  std::shared_ptr<const detail::RelaxationLadder> ladder_;
};

/// Bose occupation 1 / (e^{beta E} - 1). Throws NonPositiveBeta.
double occupation(double beta, double energy);

std::vector<ColumnVector> computational_basis(int dim);

/// One projector jump |j><j| per basis vector at rate gamma; pinching
/// stationary map. Throws NotOrthonormal.
Bath dephasing_bath(const std::vector<ColumnVector>& basis, double gamma,
                    std::string name = "dephasing");

/// Two-level relaxation towards the Gibbs state of H = diag(0, e_excited):
/// decay |g><e| at rate_scale (1+n), excitation |e><g| at rate_scale n.
Bath thermal_two_level_bath(double e_excited, double beta, double rate_scale,
                            std::string name = "thermal");

/// Three-level device basis order.
inline constexpr int kDeviceGround = 0;
inline constexpr int kDeviceLeft = 1;
inline constexpr int kDeviceRight = 2;
inline constexpr int kDeviceDim = 3;

/// Left lead: (1+n_L) on |L><0| and n_L on |0><L|.
Bath left_pump_bath(double n_l, std::string name = "left");
/// Right lead: n_R on |R><0| and (1+n_R) on |0><R|.
Bath right_pump_bath(double n_r, std::string name = "right");
Bath left_pump_bath_thermal(double beta_l, double e_l, std::string name = "left");
Bath right_pump_bath_thermal(double beta_r, double e_r, std::string name = "right");

/// B(rho) for the bath. Throws NoConvergence when a propagated fixed point
/// is not reached within t_max.
DensityMatrix stationary_map(const Bath& bath, const DensityMatrix& rho);

}  // namespace qthermo
