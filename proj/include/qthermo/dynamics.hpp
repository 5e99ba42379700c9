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
#include <optional>
#include <utility>
#include <vector>

#include "qthermo/baths.hpp"
#include "qthermo/opcore.hpp"

namespace qthermo {

/// Piecewise-constant Hamiltonian. Piece k applies on [start_k, start_{k+1}).
class HamiltonianSchedule {
 public:
  /// Static Hamiltonian.
  HamiltonianSchedule(Operator hamiltonian);  // NOLINT(google-explicit-constructor)
  /// Pieces must start at t = 0, be strictly increasing in time, Hermitian and
  /// of equal dimension; throws InvalidParams otherwise.
  explicit HamiltonianSchedule(std::vector<std::pair<double, Operator>> pieces);

  const Operator& at(double t) const;
  bool is_static() const noexcept { return pieces_.size() == 1; }
  int dim() const noexcept { return dim_of(pieces_.front().second); }
  /// Start times of every piece after the first.
  std::vector<double> switch_times() const;
  /// Largest spectral norm over the pieces.
  double max_norm() const;
  const std::vector<std::pair<double, Operator>>& pieces() const noexcept { return pieces_; }

 private:
  std::vector<std::pair<double, Operator>> pieces_;
};

struct EvolutionSpec {
  HamiltonianSchedule hamiltonian;
  std::vector<Bath> baths;
  double dt;
  double t_max;
};

/// 0.01 / max(largest jump rate, ||H||_2).
double default_time_step(const HamiltonianSchedule& h, const std::vector<Bath>& baths);

/// Validates dimensions and 0 < dt < t_max; dt defaults to default_time_step.
EvolutionSpec make_evolution_spec(HamiltonianSchedule h, std::vector<Bath> baths, double t_max,
                                  std::optional<double> dt = std::nullopt);

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

/// -i[H, rho] + sum_b L_b(rho).
Operator evolution_rhs(const Operator& h, const std::vector<Bath>& baths, const Operator& rho);

SuperOperator liouvillian(const Operator& h, const std::vector<Bath>& baths);
/// Throws TimeDependentHamiltonian for a switched schedule.
SuperOperator liouvillian(const EvolutionSpec& spec);

/// Fixed-step classical RK4. Each state is hermitized after the step and
/// every step is recorded. Throws StateInvariantViolated when an eigenvalue
/// drops below -1e-6.
Trajectory propagate(const DensityMatrix& rho0, const EvolutionSpec& spec);

/// Unique kernel element of the Liouvillian, trace-normalized. Throws
/// DegenerateKernel or NonPositiveSolution.
DensityMatrix steady_state(const SuperOperator& liouv);

namespace detail {

/// Exact propagators exp(L t0 2^k) of a single generator, used to relax a
/// state onto the generator's fixed points with time doubling.
struct RelaxationLadder {
  SuperOperator generator;
  double base_step;
  double t_max;
  std::vector<Eigen::MatrixXcd> propagators;
};

std::shared_ptr<const RelaxationLadder> build_relaxation_ladder(const LindbladGenerator& gen,
                                                                double t_max);

/// Applies the ladder until ||L(rho)||_F < tol. Throws NoConvergence.
Operator relax_to_fixed_point(const RelaxationLadder& ladder, const Operator& rho, double tol);

}  // namespace detail

}  // namespace qthermo
