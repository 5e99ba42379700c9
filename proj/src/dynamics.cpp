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

#include "qthermo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

namespace qthermo {

namespace {

constexpr double kPositivityFloor = -1e-6;
constexpr double kKernelGapRatio = 1e-8;
constexpr double kPropagatedStateTol = 1e-6;

double spectral_norm(const Operator& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitize(h), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double max_bath_rate(const std::vector<Bath>& baths) {
  double r = 0.0;
  for (const auto& b : baths) r = std::max(r, b.generator().max_rate());
  return r;
}

}  // namespace

HamiltonianSchedule::HamiltonianSchedule(Operator hamiltonian)
    : HamiltonianSchedule(std::vector<std::pair<double, Operator>>{{0.0, std::move(hamiltonian)}}) {}

HamiltonianSchedule::HamiltonianSchedule(std::vector<std::pair<double, Operator>> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty() || pieces_.front().first != 0.0) {
    throw Error(ErrorKind::InvalidParams, "Hamiltonian schedule must start at t = 0");
  }
  const int d = dim_of(pieces_.front().second);
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const auto& [start, h] = pieces_[k];
    require_square(h, "Hamiltonian schedule");
    if (dim_of(h) != d) throw Error(ErrorKind::DimensionMismatch, "Hamiltonian schedule piece");
    if (!is_hermitian(h)) throw Error(ErrorKind::NotHermitian, "Hamiltonian schedule piece");
    if (k > 0 && !(start > pieces_[k - 1].first)) {
      throw Error(ErrorKind::InvalidParams, "schedule start times must increase");
    }
  }
}

const Operator& HamiltonianSchedule::at(double t) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                             [](double value, const auto& piece) { return value < piece.first; });
  if (it == pieces_.begin()) return pieces_.front().second;
  return std::prev(it)->second;
}

std::vector<double> HamiltonianSchedule::switch_times() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < pieces_.size(); ++k) out.push_back(pieces_[k].first);
  return out;
}

double HamiltonianSchedule::max_norm() const {
  double n = 0.0;
  for (const auto& [start, h] : pieces_) n = std::max(n, spectral_norm(h));
  return n;
}

double default_time_step(const HamiltonianSchedule& h, const std::vector<Bath>& baths) {
  const double scale = std::max(max_bath_rate(baths), h.max_norm());
  return scale > 0.0 ? 0.01 / scale : 0.01;
}

EvolutionSpec make_evolution_spec(HamiltonianSchedule h, std::vector<Bath> baths, double t_max,
                                  std::optional<double> dt) {
  const int d = h.dim();
  for (const auto& b : baths) {
    if (b.dim() != d) {
      throw Error(ErrorKind::DimensionMismatch, "bath '" + b.name() + "' dimension");
    }
  }
  const double step = dt.value_or(default_time_step(h, baths));
  if (!(step > 0.0) || !(step < t_max) || !std::isfinite(t_max)) {
    throw Error(ErrorKind::InvalidParams, "need 0 < dt < t_max");
  }
  return EvolutionSpec{std::move(h), std::move(baths), step, t_max};
}

Operator evolution_rhs(const Operator& h, const std::vector<Bath>& baths, const Operator& rho) {
  const Complex minus_i(0.0, -1.0);
  Operator out = minus_i * (h * rho - rho * h);
  for (const auto& b : baths) out += b.generator().apply(rho);
  return out;
}

SuperOperator liouvillian(const Operator& h, const std::vector<Bath>& baths) {
  return superop_from_action(dim_of(h),
                             [&](const Operator& a) { return evolution_rhs(h, baths, a); });
}

SuperOperator liouvillian(const EvolutionSpec& spec) {
  if (!spec.hamiltonian.is_static()) {
    throw Error(ErrorKind::TimeDependentHamiltonian, "liouvillian needs a static Hamiltonian");
  }
  return liouvillian(spec.hamiltonian.at(0.0), spec.baths);
}

Trajectory propagate(const DensityMatrix& rho0, const EvolutionSpec& spec) {
  if (rho0.dim() != spec.hamiltonian.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "propagate: initial state dimension");
  }
  const double dt = spec.dt;
  const auto steps = static_cast<std::size_t>(std::floor(spec.t_max / dt + 1e-9));
  // H is frozen per step at the step midpoint, so switches on the step grid are exact.
  const auto rhs = [&](const Operator& h, const Operator& rho) {
    return evolution_rhs(h, spec.baths, rho);
  };

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  Operator rho = rho0.op();
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const Operator& h = spec.hamiltonian.at(t + 0.5 * dt);
    const Operator k1 = rhs(h, rho);
    const Operator k2 = rhs(h, rho + (0.5 * dt) * k1);
    const Operator k3 = rhs(h, rho + (0.5 * dt) * k2);
    const Operator k4 = rhs(h, rho + dt * k3);
    rho = hermitize(rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    try {
      traj.states.emplace_back(rho, kPropagatedStateTol);
    } catch (const Error& e) {
      throw Error(ErrorKind::StateInvariantViolated,
                  "step " + std::to_string(k + 1) + " (t = " + std::to_string(t + dt) +
                      "): " + e.what() + "; reduce dt");
    }
    traj.times.push_back(static_cast<double>(k + 1) * dt);
  }
  return traj;
}

DensityMatrix steady_state(const SuperOperator& liouv) {
  const int d = liouv.dim();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(liouv.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "steady_state: eigensolver failed");
  }
  const Eigen::VectorXcd& values = solver.eigenvalues();
  std::vector<Eigen::Index> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(values(a)) < std::abs(values(b));
  });
  const double radius = std::abs(values(order.back()));
  if (values.size() < 2 || radius == 0.0 ||
      std::abs(values(order[1])) < kKernelGapRatio * radius) {
    throw Error(ErrorKind::DegenerateKernel,
                "steady_state: kernel of the Liouvillian is not one-dimensional");
  }

  Operator nu = unvectorize(solver.eigenvectors().col(order.front()), d);
  const Complex trace = nu.trace();
  if (std::abs(trace) < 1e-12 * nu.norm()) {
    throw Error(ErrorKind::NonPositiveSolution, "steady_state: kernel vector is traceless");
  }
  nu = hermitize(nu / trace);
  nu /= nu.trace().real();

  // Polish with the bordered system [L; Tr] x = [0; 1].
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  Eigen::MatrixXcd bordered(n + 1, n);
  bordered.topRows(n) = liouv.matrix();
  bordered.row(n) = vectorize(identity(d)).transpose();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n + 1);
  rhs(n) = 1.0;
  const Eigen::VectorXcd residual = rhs - bordered * vectorize(nu);
  nu += unvectorize(bordered.colPivHouseholderQr().solve(residual), d);
  nu = hermitize(nu);
  nu /= nu.trace().real();

  try {
    return DensityMatrix(nu);
  } catch (const Error& e) {
    throw Error(ErrorKind::NonPositiveSolution, std::string("steady_state: ") + e.what());
  }
}

namespace detail {

std::shared_ptr<const RelaxationLadder> build_relaxation_ladder(const LindbladGenerator& gen,
                                                                double t_max) {
  auto ladder = std::make_shared<RelaxationLadder>(RelaxationLadder{
      gen.superoperator(), 0.01 / gen.max_rate(), t_max, {}});
  Eigen::MatrixXcd step = (ladder->generator.matrix() * ladder->base_step).exp();
  double covered = 0.0;
  double span = ladder->base_step;
  while (true) {
    ladder->propagators.push_back(step);
    covered += span;
    if (covered >= t_max) break;
    step = step * step;
    span *= 2.0;
  }
  return ladder;
}

Operator relax_to_fixed_point(const RelaxationLadder& ladder, const Operator& rho, double tol) {
  const int d = ladder.generator.dim();
  Eigen::VectorXcd v = vectorize(rho);
  const auto residual = [&](const Eigen::VectorXcd& x) {
    return (ladder.generator.matrix() * x).norm();
  };
  double r = residual(v);
  for (const auto& p : ladder.propagators) {
    if (r < tol) break;
    v = p * v;
    r = residual(v);
  }
  if (!(r < tol)) {
    throw Error(ErrorKind::NoConvergence, "fixed point not reached by t_max = " +
                                              std::to_string(ladder.t_max) +
                                              " (residual " + std::to_string(r) + ")");
  }
  return unvectorize(v, d);
}

}  // namespace detail

}  // namespace qthermo
