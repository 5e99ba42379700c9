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

#include "qthermo/baths.hpp"

#include <cmath>
#include <limits>

#include "qthermo/dynamics.hpp"

namespace qthermo {

namespace {

constexpr double kOrthonormalTol = 1e-12;

void require_orthonormal(const std::vector<ColumnVector>& basis, int dim) {
  if (static_cast<int>(basis.size()) != dim) {
    throw Error(ErrorKind::NotOrthonormal, "basis must have exactly dim vectors");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != dim) throw Error(ErrorKind::DimensionMismatch, "basis vector size");
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex overlap = basis[i].dot(basis[j]);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > kOrthonormalTol) {
        throw Error(ErrorKind::NotOrthonormal,
                    "<" + std::to_string(i) + "|" + std::to_string(j) + "> off by " +
                        std::to_string(std::abs(overlap - expected)));
      }
    }
  }
}

void require_occupation(double n) {
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::NonPositiveOccupation, "occupation must be positive and finite");
  }
}

Operator gibbs_state(const Operator& h, double beta) {
  const Spectrum s = hermitian_spectrum(h);
  const double ground = s.values(0);
  Eigen::VectorXd weights(s.values.size());
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    const double gap = s.values(i) - ground;
    // beta = inf keeps only the ground space.
    weights(i) = gap <= 0.0 ? 1.0 : std::exp(-beta * gap);
  }
  weights /= weights.sum();
  return hermitize(s.vectors * weights.cast<Complex>().asDiagonal() * s.vectors.adjoint());
}

Operator pinch(const std::vector<ColumnVector>& basis, const Operator& rho) {
  Operator out = Operator::Zero(rho.rows(), rho.cols());
  for (const auto& v : basis) {
    const Complex p = v.dot(rho * v);
    out.noalias() += p.real() * (v * v.adjoint());
  }
  return out;
}

}  // namespace

LindbladGenerator::LindbladGenerator(int dim, std::vector<JumpTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim <= 0) throw Error(ErrorKind::DimensionMismatch, "generator dimension must be positive");
  for (const auto& t : terms_) {
    if (t.jump.rows() != dim || t.jump.cols() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "jump operator dimension differs from generator");
    }
    if (!(t.rate >= 0.0) || !std::isfinite(t.rate)) {
      throw Error(ErrorKind::InvalidParams, "jump rate must be finite and >= 0");
    }
  }
}

Operator LindbladGenerator::apply(const Operator& a) const {
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw Error(ErrorKind::DimensionMismatch, "apply_generator");
  }
  Operator out = Operator::Zero(dim_, dim_);
  for (const auto& [rate, jump] : terms_) {
    const Operator jd = jump.adjoint();
    const Operator jdj = jd * jump;
    out.noalias() += rate * (2.0 * jump * a * jd - jdj * a - a * jdj);
  }
  return out;
}

Operator LindbladGenerator::apply_adjoint(const Operator& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw Error(ErrorKind::DimensionMismatch, "apply_adjoint");
  }
  Operator out = Operator::Zero(dim_, dim_);
  for (const auto& [rate, jump] : terms_) {
    const Operator jd = jump.adjoint();
    const Operator jdj = jd * jump;
    out.noalias() += rate * (2.0 * jd * x * jump - jdj * x - x * jdj);
  }
  return out;
}

SuperOperator LindbladGenerator::superoperator() const {
  return superop_from_action(dim_, [this](const Operator& a) { return apply(a); });
}

double LindbladGenerator::max_rate() const {
  double r = 0.0;
  for (const auto& t : terms_) r = std::max(r, t.rate);
  return r;
}

double LindbladGenerator::min_positive_rate() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) {
    if (t.rate > 0.0) r = std::min(r, t.rate);
  }
  return std::isfinite(r) ? r : 0.0;
}

Operator apply_generator(const LindbladGenerator& gen, const Operator& a) { return gen.apply(a); }

Bath::Bath(std::string name, LindbladGenerator generator, StationaryStrategy strategy)
    : name_(std::move(name)), generator_(std::move(generator)), strategy_(std::move(strategy)) {
  const int d = generator_.dim();
  if (auto* gibbs = std::get_if<GibbsClosedForm>(&strategy_)) {
    if (!(gibbs->beta > 0.0)) throw Error(ErrorKind::NonPositiveBeta, "Gibbs strategy");
    require_square(gibbs->hamiltonian, "Gibbs strategy");
    require_same_dim(gibbs->hamiltonian, identity(d), "Gibbs strategy");
    if (!is_hermitian(gibbs->hamiltonian)) {
      throw Error(ErrorKind::NotHermitian, "Gibbs strategy Hamiltonian");
    }
  } else if (auto* pinching = std::get_if<PinchingClosedForm>(&strategy_)) {
    require_orthonormal(pinching->basis, d);
    for (const auto& v : pinching->basis) {
      if (frobenius_norm(generator_.apply(outer(v, v))) > 1e-12) {
        throw Error(ErrorKind::InvalidParams,
                    "pinching strategy: generator does not fix the basis projectors");
      }
    }
  } else {
    auto& prop = std::get<PropagateToFixedPoint>(strategy_);
    if (!(prop.tol > 0.0)) throw Error(ErrorKind::InvalidParams, "fixed-point tolerance");
    if (prop.t_max <= 0.0) {
      const double slowest = generator_.min_positive_rate();
      prop.t_max = slowest > 0.0 ? 1e3 / slowest : 0.0;
    }
    if (!generator_.empty() && generator_.max_rate() > 0.0) {
      ladder_ = detail::build_relaxation_ladder(generator_, prop.t_max);
    }
  }
}

double occupation(double beta, double energy) {
  if (!(beta > 0.0)) throw Error(ErrorKind::NonPositiveBeta, "beta must be positive");
  if (!(energy > 0.0)) throw Error(ErrorKind::InvalidParams, "level energy must be positive");
  return 1.0 / std::expm1(beta * energy);
}

std::vector<ColumnVector> computational_basis(int dim) {
  std::vector<ColumnVector> basis;
  basis.reserve(dim);
  for (int j = 0; j < dim; ++j) basis.push_back(ColumnVector::Unit(dim, j));
  return basis;
}

Bath dephasing_bath(const std::vector<ColumnVector>& basis, double gamma, std::string name) {
  if (basis.empty()) throw Error(ErrorKind::NotOrthonormal, "empty basis");
  const int d = static_cast<int>(basis.front().size());
  require_orthonormal(basis, d);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::InvalidParams, "dephasing rate must be positive");
  }
  std::vector<JumpTerm> terms;
  for (const auto& v : basis) terms.push_back({gamma, outer(v, v)});
  return Bath(std::move(name), LindbladGenerator(d, std::move(terms)), PinchingClosedForm{basis});
}

Bath thermal_two_level_bath(double e_excited, double beta, double rate_scale, std::string name) {
  if (!(beta > 0.0)) throw Error(ErrorKind::NonPositiveBeta, "beta must be positive");
  if (!(rate_scale > 0.0)) throw Error(ErrorKind::InvalidParams, "rate scale must be positive");
  const double n = occupation(beta, e_excited);
  std::vector<JumpTerm> terms{{rate_scale * (1.0 + n), matrix_unit(2, 0, 1)}};
  if (n > 0.0) terms.push_back({rate_scale * n, matrix_unit(2, 1, 0)});
  Operator h = Operator::Zero(2, 2);
  h(1, 1) = e_excited;
  return Bath(std::move(name), LindbladGenerator(2, std::move(terms)), GibbsClosedForm{h, beta});
}

Bath left_pump_bath(double n_l, std::string name) {
  require_occupation(n_l);
  std::vector<JumpTerm> terms{
      {1.0 + n_l, matrix_unit(kDeviceDim, kDeviceLeft, kDeviceGround)},
      {n_l, matrix_unit(kDeviceDim, kDeviceGround, kDeviceLeft)},
  };
  return Bath(std::move(name), LindbladGenerator(kDeviceDim, std::move(terms)),
              PropagateToFixedPoint{});
}

Bath right_pump_bath(double n_r, std::string name) {
  require_occupation(n_r);
  std::vector<JumpTerm> terms{
      {n_r, matrix_unit(kDeviceDim, kDeviceRight, kDeviceGround)},
      {1.0 + n_r, matrix_unit(kDeviceDim, kDeviceGround, kDeviceRight)},
  };
  return Bath(std::move(name), LindbladGenerator(kDeviceDim, std::move(terms)),
              PropagateToFixedPoint{});
}

Bath left_pump_bath_thermal(double beta_l, double e_l, std::string name) {
  return left_pump_bath(occupation(beta_l, e_l), std::move(name));
}

Bath right_pump_bath_thermal(double beta_r, double e_r, std::string name) {
  return right_pump_bath(occupation(beta_r, e_r), std::move(name));
}

DensityMatrix stationary_map(const Bath& bath, const DensityMatrix& rho) {
  if (rho.dim() != bath.dim()) throw Error(ErrorKind::DimensionMismatch, "stationary_map");
  return std::visit(
      [&](const auto& strategy) -> DensityMatrix {
        using T = std::decay_t<decltype(strategy)>;
        if constexpr (std::is_same_v<T, GibbsClosedForm>) {
          return DensityMatrix(gibbs_state(strategy.hamiltonian, strategy.beta));
        } else if constexpr (std::is_same_v<T, PinchingClosedForm>) {
          return DensityMatrix(pinch(strategy.basis, rho.op()));
        } else {
          if (bath.ladder() == nullptr) return rho;
          Operator fixed = detail::relax_to_fixed_point(*bath.ladder(), rho.op(), strategy.tol);
          fixed /= fixed.trace().real();
          return DensityMatrix(hermitize(fixed));
        }
      },
      bath.strategy());
}

}  // namespace qthermo
