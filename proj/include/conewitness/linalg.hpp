// Copyright 2026 The conewitness Authors
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
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "conewitness/config.hpp"

namespace conewitness {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// All randomized operations draw from an explicitly passed engine.
using Rng = std::mt19937_64;

bool is_hermitian(const ComplexMatrix& a, double rel_tol = Tolerances{}.hermitian);

/// Throws NonHermitianInput unless `a` is square and Hermitian within `rel_tol`.
/// Inputs are never symmetrized.
void require_hermitian(const ComplexMatrix& a, double rel_tol = Tolerances{}.hermitian);

bool is_unitary(const ComplexMatrix& u, double tol = Tolerances{}.unitary);

struct EigenDecomposition {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns, unitary
};

/// Hermitian eigendecomposition with ascending eigenvalues.
EigenDecomposition eigh(const ComplexMatrix& a, const Tolerances& tol = {});

/// Smallest eigenvalue and its eigenvector, phase-fixed by `fix_phase`.
struct BottomEigenpair {
  double value = 0.0;
  ComplexVector vector;
};
BottomEigenpair bottom_eigenpair(const ComplexMatrix& a);

struct NullSpace {
  int rank = 0;
  RealMatrix basis;  // cols x (cols - rank), orthonormal columns
  RealVector singular_values;
  double sigma_max = 0.0;
};

/// Rank and orthonormal null-space basis of a real matrix. A singular value
/// counts toward the rank when it exceeds rel_tol * sigma_max.
NullSpace svd_nullspace(const RealMatrix& m, double rel_tol);

/// Reduces a tall matrix to a square upper-triangular factor with the same
/// singular values and right singular vectors. Rows can be appended in
/// batches; `factor()` is valid at any point.
class RowCompressor {
 public:
  explicit RowCompressor(int cols);

  void append(const RealMatrix& rows);
  int cols() const { return cols_; }
  std::int64_t rows_seen() const { return rows_seen_; }
  RealMatrix factor() const;

 private:
  int cols_;
  std::int64_t rows_seen_ = 0;
  RealMatrix r_;
};

/// Uniform on the unit sphere of C^n.
ComplexVector random_unit_vector(int n, Rng& rng);

/// Haar unitary: QR of a Ginibre matrix with the phases of diag(R) absorbed into Q.
ComplexMatrix random_unitary(int n, Rng& rng);

/// Random Hermitian matrix with i.i.d. Gaussian entries (GUE up to scale).
ComplexMatrix random_hermitian(int n, Rng& rng);

/// Rotates `v` so that its first entry with modulus above `eps` is real positive.
void fix_phase(ComplexVector& v, double eps = 1e-12);

ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix pauli_y();

/// Real coordinates of a d x d Hermitian matrix: the d diagonal entries, then
/// for each i < j (row-major order) sqrt(2) Re A_ij followed by sqrt(2) Im A_ij.
/// The weighting makes the map an isometry from Frobenius to Euclidean norm.
class HermitianParamVector {
 public:
  HermitianParamVector(int dim, RealVector coords);

  static HermitianParamVector from_matrix(const ComplexMatrix& a, double rel_tol = Tolerances{}.hermitian);

  int dim() const { return dim_; }
  const RealVector& coords() const { return coords_; }
  ComplexMatrix to_matrix() const;

 private:
  int dim_;
  RealVector coords_;
};

/// Coordinate index helpers for HermitianParamVector: the offset of the
/// (Re, Im) couple for i < j.
int hermitian_param_count(int dim);
int hermitian_offdiag_offset(int dim, int i, int j);

/// Coordinates of a Hermitian matrix without the Hermiticity check.
RealVector hermitian_coords(const ComplexMatrix& a);
ComplexMatrix hermitian_from_coords(const RealVector& coords, int dim);

}  // namespace conewitness
