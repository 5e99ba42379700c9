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

// Seeded generators and independent oracles shared by the test suites.

#include <cmath>
#include <cstdint>
#include <random>

#include "qthermo/opcore.hpp"

namespace qthermo::testing {

using Rng = std::mt19937_64;

inline Operator random_operator(int dim, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(n(rng), n(rng));
  return a;
}

inline Operator random_hermitian(int dim, Rng& rng) {
  const Operator a = random_operator(dim, rng);
  return 0.5 * (a + a.adjoint());
}

/// Full-rank state: normalized Ginibre G G^dagger mixed with I/d so the
/// smallest eigenvalue is at least floor/d.
inline DensityMatrix random_state(int dim, Rng& rng, double floor = 0.05) {
  const Operator g = random_operator(dim, rng);
  Operator rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (1.0 - floor) * rho + (floor / dim) * Operator::Identity(dim, dim);
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

inline Operator random_unitary(int dim, Rng& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_operator(dim, rng));
  return qr.householderQ() * Operator::Identity(dim, dim);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// exp(A) by scaling and squaring of a truncated Taylor series; independent
/// of any eigendecomposition.
inline Operator expm_series(const Operator& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const Operator scaled = a / std::pow(2.0, squarings);
  Operator term = Operator::Identity(a.rows(), a.cols());
  Operator sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline double max_abs(const Operator& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

inline Operator pauli_x() {
  Operator s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}
inline Operator pauli_y() {
  Operator s(2, 2);
  s << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return s;
}
inline Operator pauli_z() {
  Operator s(2, 2);
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

}  // namespace qthermo::testing
