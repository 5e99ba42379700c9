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

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "qthermo/error.hpp"

namespace qthermo {

using Complex = std::complex<double>;

/// Dense complex square matrix. Carries H, rho, flows and forces; Hermiticity
/// is not assumed and is checked where an operation needs it.
using Operator = Eigen::MatrixXcd;
using ColumnVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kStateTol = 1e-10;
/// Support cutoff, relative to the largest eigenvalue.
inline constexpr double kDefaultEigCut = 1e-12;

inline int dim_of(const Operator& a) { return static_cast<int>(a.rows()); }

Operator identity(int dim);
/// |i><j| in the computational basis.
Operator matrix_unit(int dim, int i, int j);
Operator outer(const ColumnVector& ket, const ColumnVector& bra);

double frobenius_norm(const Operator& a);
/// Largest absolute deviation of a from its conjugate transpose.
double hermiticity_defect(const Operator& a);
bool is_hermitian(const Operator& a, double tol = kHermitianTol);
void require_square(const Operator& a, const char* what);
void require_same_dim(const Operator& a, const Operator& b, const char* what);

/// (A + A^dagger) / 2.
Operator hermitize(const Operator& a);

/// Eigenpairs of a Hermitian operator, eigenvalues ascending.
struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

/// Throws NotHermitian when the symmetry check fails.
Spectrum hermitian_spectrum(const Operator& a, double tol = kHermitianTol);

/// Absolute support threshold: eig_cut times the largest eigenvalue.
double support_threshold(const Spectrum& s, double eig_cut = kDefaultEigCut);

/// Natural log of a Hermitian PSD operator restricted to its support:
/// eigenvalues at or below eig_cut * lambda_max contribute zero.
Operator matrix_log_on_support(const Operator& a, double eig_cut = kDefaultEigCut);
Operator matrix_log_on_support(const Spectrum& s, double eig_cut = kDefaultEigCut);

Operator matrix_exp_hermitian(const Operator& a);

/// Hilbert-Schmidt inner product Tr[a^dagger b].
Complex hs_inner(const Operator& a, const Operator& b);

/// Tr[a b] without forming the product.
Complex trace_product(const Operator& a, const Operator& b);

/// 1/2 ||a - b||_1 for Hermitian a, b.
double trace_distance(const Operator& a, const Operator& b);

/// Column-stacking vectorization.
ColumnVector vectorize(const Operator& a);
Operator unvectorize(const ColumnVector& v, int dim);

/// Hermitian, PSD, unit-trace operator. Construction validates.
class DensityMatrix {
 public:
  /// Throws InvalidState when any invariant fails at the given tolerance.
  explicit DensityMatrix(Operator op, double tol = kStateTol);

  const Operator& op() const noexcept { return op_; }
  int dim() const noexcept { return static_cast<int>(op_.rows()); }
  /// Eigendecomposition computed during validation.
  const Spectrum& spectrum() const noexcept { return spectrum_; }

  static DensityMatrix maximally_mixed(int dim);
  /// |k><k| in the computational basis.
  static DensityMatrix basis_state(int dim, int k);

 private:
  Operator op_;
  Spectrum spectrum_;
};

/// Linear map on Operators stored as a d^2 x d^2 matrix over column-stacked
/// vectorization.
class SuperOperator {
 public:
  SuperOperator(int dim, Eigen::MatrixXcd matrix);

  static SuperOperator zero(int dim);

  int dim() const noexcept { return dim_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

  Operator apply(const Operator& a) const;

  SuperOperator operator+(const SuperOperator& other) const;
  SuperOperator operator*(Complex scale) const;
  /// Composition: (this * other)(A) = this(other(A)).
  SuperOperator compose(const SuperOperator& inner) const;

 private:
  int dim_;
  Eigen::MatrixXcd matrix_;
};

using OperatorMap = std::function<Operator(const Operator&)>;

/// Materializes a linear map by applying it to the d^2 matrix units.
SuperOperator superop_from_action(int dim, const OperatorMap& action);

/// Hilbert-Schmidt adjoint: the conjugate transpose of the vectorized matrix.
SuperOperator superop_hs_adjoint(const SuperOperator& s);

}  // namespace qthermo
