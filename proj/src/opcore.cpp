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

#include "qthermo/opcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qthermo {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::NonPositiveBeta: return "NonPositiveBeta";
    case ErrorKind::NonPositiveOccupation: return "NonPositiveOccupation";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::InvalidBlochVector: return "InvalidBlochVector";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::TimeDependentHamiltonian: return "TimeDependentHamiltonian";
    case ErrorKind::StateInvariantViolated: return "StateInvariantViolated";
    case ErrorKind::DegenerateKernel: return "DegenerateKernel";
    case ErrorKind::NonPositiveSolution: return "NonPositiveSolution";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::MissingPair: return "MissingPair";
    case ErrorKind::ZeroCoherence: return "ZeroCoherence";
  }
  return "Unknown";
}

Operator identity(int dim) { return Operator::Identity(dim, dim); }

Operator matrix_unit(int dim, int i, int j) {
  Operator e = Operator::Zero(dim, dim);
  e(i, j) = 1.0;
  return e;
}

Operator outer(const ColumnVector& ket, const ColumnVector& bra) {
  return ket * bra.adjoint();
}

double frobenius_norm(const Operator& a) { return a.norm(); }

double hermiticity_defect(const Operator& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Operator& a, double tol) {
  return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

void require_square(const Operator& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": operator must be square and non-empty");
  }
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + " vs " +
                    std::to_string(b.rows()));
  }
}

Operator hermitize(const Operator& a) {
  Operator h = 0.5 * (a + a.adjoint());
  // Diagonal of (a + a^dagger)/2 is real up to rounding; make it exactly so.
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = h(i, i).real();
  return h;
}

Spectrum hermitian_spectrum(const Operator& a, double tol) {
  require_square(a, "hermitian_spectrum");
  if (!is_hermitian(a, tol)) {
    throw Error(ErrorKind::NotHermitian,
                "deviation " + std::to_string(hermiticity_defect(a)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitize(a));
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

double support_threshold(const Spectrum& s, double eig_cut) {
  const double top = s.values.size() ? std::max(s.values.maxCoeff(), 0.0) : 0.0;
  return eig_cut * top;
}

Operator matrix_log_on_support(const Spectrum& s, double eig_cut) {
  const double cut = support_threshold(s, eig_cut);
  const int d = static_cast<int>(s.values.size());
  Operator out = Operator::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double lambda = s.values(i);
    if (lambda < -std::max(cut, kStateTol)) {
      throw Error(ErrorKind::NegativeEigenvalue, "eigenvalue " + std::to_string(lambda));
    }
    if (lambda <= cut) continue;
    const auto v = s.vectors.col(i);
    out.noalias() += std::log(lambda) * (v * v.adjoint());
  }
  return out;
}

Operator matrix_log_on_support(const Operator& a, double eig_cut) {
  return matrix_log_on_support(hermitian_spectrum(a), eig_cut);
}

Operator matrix_exp_hermitian(const Operator& a) {
  const Spectrum s = hermitian_spectrum(a);
  const Eigen::VectorXcd weights = s.values.array().exp().cast<Complex>();
  return hermitize(s.vectors * weights.asDiagonal() * s.vectors.adjoint());
}

Complex hs_inner(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "hs_inner");
  return (a.conjugate().cwiseProduct(b)).sum();
}

Complex trace_product(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "trace_product");
  return (a.transpose().cwiseProduct(b)).sum();
}

double trace_distance(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "trace_distance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitize(a - b),
                                                         Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

ColumnVector vectorize(const Operator& a) {
  return Eigen::Map<const ColumnVector>(a.data(), a.size());
}

Operator unvectorize(const ColumnVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw Error(ErrorKind::DimensionMismatch, "unvectorize: length is not dim^2");
  }
  return Eigen::Map<const Operator>(v.data(), dim, dim);
}

DensityMatrix::DensityMatrix(Operator op, double tol) : op_(std::move(op)) {
  if (op_.rows() != op_.cols() || op_.rows() == 0) {
    throw Error(ErrorKind::InvalidState, "density matrix must be square and non-empty");
  }
  const double herm = hermiticity_defect(op_);
  if (herm > tol) {
    throw Error(ErrorKind::InvalidState, "not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  op_ = hermitize(op_);
  const double trace = op_.trace().real();
  if (std::abs(trace - 1.0) > tol) {
    throw Error(ErrorKind::InvalidState, "trace " + std::to_string(trace));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op_);
  spectrum_ = Spectrum{solver.eigenvalues(), solver.eigenvectors()};
  if (spectrum_.values.minCoeff() < -tol) {
    throw Error(ErrorKind::InvalidState,
                "negative eigenvalue " + std::to_string(spectrum_.values.minCoeff()));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(int dim, int k) {
  return DensityMatrix(matrix_unit(dim, k, k));
}

SuperOperator::SuperOperator(int dim, Eigen::MatrixXcd matrix)
    : dim_(dim), matrix_(std::move(matrix)) {
  const Eigen::Index n = static_cast<Eigen::Index>(dim) * dim;
  if (dim <= 0 || matrix_.rows() != n || matrix_.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "superoperator matrix must be dim^2 x dim^2");
  }
}

SuperOperator SuperOperator::zero(int dim) {
  const Eigen::Index n = static_cast<Eigen::Index>(dim) * dim;
  return SuperOperator(dim, Eigen::MatrixXcd::Zero(n, n));
}

Operator SuperOperator::apply(const Operator& a) const {
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw Error(ErrorKind::DimensionMismatch, "SuperOperator::apply");
  }
  return unvectorize(matrix_ * vectorize(a), dim_);
}

SuperOperator SuperOperator::operator+(const SuperOperator& other) const {
  if (other.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "SuperOperator::operator+");
  return SuperOperator(dim_, matrix_ + other.matrix_);
}

SuperOperator SuperOperator::operator*(Complex scale) const {
  return SuperOperator(dim_, matrix_ * scale);
}

SuperOperator SuperOperator::compose(const SuperOperator& inner) const {
  if (inner.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "SuperOperator::compose");
  return SuperOperator(dim_, matrix_ * inner.matrix_);
}

SuperOperator superop_from_action(int dim, const OperatorMap& action) {
  const Eigen::Index n = static_cast<Eigen::Index>(dim) * dim;
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    // Column-stacking: vector index k is entry (k % dim, k / dim).
    const Operator unit = matrix_unit(dim, static_cast<int>(k % dim), static_cast<int>(k / dim));
    const Operator image = action(unit);
    if (image.rows() != dim || image.cols() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "superop_from_action: action changed dimension");
    }
    m.col(k) = vectorize(image);
  }
  return SuperOperator(dim, std::move(m));
}

SuperOperator superop_hs_adjoint(const SuperOperator& s) {
  return SuperOperator(s.dim(), s.matrix().adjoint());
}

}  // namespace qthermo
