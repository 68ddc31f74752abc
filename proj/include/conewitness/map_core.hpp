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

#include <functional>

#include "conewitness/config.hpp"
#include "conewitness/linalg.hpp"

namespace conewitness {

// Conventions used throughout:
//  * {e_i} is the standard basis; conjugation and transposition are entrywise
//    in that basis.
//  * Tensor index (i, k) of C^n (x) C^m is flattened to i * m + k.
//  * The Choi matrix of phi: M_n -> M_m is W = sum_ij e_ij (x) phi(e_ij),
//    so W[(i,k), (j,l)] = phi(e_ij)[k, l].

/// A Hermiticity-preserving linear map M_n -> M_m, stored as its Choi matrix.
class LinearMatrixMap {
 public:
  /// Throws DimensionMismatch if `choi` is not nm x nm, NonHermitianInput if
  /// it is not Hermitian within tolerance.
  LinearMatrixMap(int dim_in, int dim_out, ComplexMatrix choi, const Tolerances& tol = {});

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const ComplexMatrix& choi() const { return choi_; }

 private:
  int dim_in_;
  int dim_out_;
  ComplexMatrix choi_;
};

using MatrixAction = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// Builds the map by evaluating `action` on every matrix unit e_ij.
LinearMatrixMap map_from_action(int dim_in, int dim_out, const MatrixAction& action, const Tolerances& tol = {});

ComplexMatrix choi_of(const LinearMatrixMap& phi);

/// phi(X) = Tr_in(W (X^T (x) I_m)).
ComplexMatrix apply(const LinearMatrixMap& phi, const ComplexMatrix& x);

LinearMatrixMap map_from_choi(ComplexMatrix w, int n, int m, const Tolerances& tol = {});

LinearMatrixMap add(const LinearMatrixMap& phi, const LinearMatrixMap& psi);
LinearMatrixMap subtract(const LinearMatrixMap& phi, const LinearMatrixMap& psi);
LinearMatrixMap scale(const LinearMatrixMap& phi, double lambda);

/// phi o transpose; its Choi matrix is the partial transpose of W on the input factor.
LinearMatrixMap compose_with_transpose(const LinearMatrixMap& phi);

/// Partial transpose of an nm x nm matrix on the first (input) factor.
ComplexMatrix partial_transpose_first(const ComplexMatrix& w, int n, int m);

/// The vector conj(x) (x) y. This is the only place where the map-level pair
/// (x, y) is translated into witness coordinates. With the Choi layout above,
///   <conj(x) (x) y| W_phi |conj(x) (x) y> = sum_ij x_i conj(x_j) <y|phi(e_ij)|y>
///                                         = <y|phi(P_x)|y>.
/// The conjugate sits on the input factor; putting it on y instead would give
/// <conj(y)|phi(P_conj(x))|conj(y)>, which differs for maps whose Choi matrix
/// is not real.
ComplexVector witness_vector(const ComplexVector& x, const ComplexVector& y);

/// <v|W|v> for v = witness_vector(x, y). Throws NonRealPairing when the imaginary
/// residue exceeds pairing_imag * max(1, ||W||_F), DimensionMismatch on shape errors.
double witness_pairing(const ComplexMatrix& w, const ComplexVector& x, const ComplexVector& y,
                       const Tolerances& tol = {});

/// Canonical representative of the ray through W: Tr W = n*m when Tr W > 0,
/// otherwise unit Frobenius norm with the first nonzero Hermitian coordinate positive.
ComplexMatrix ray_representative(const ComplexMatrix& w, int n, int m);

/// ||W/||W||_F - V/||V||_F||_F. Infinite when either matrix is zero.
double ray_distance(const ComplexMatrix& w, const ComplexMatrix& v);

/// True when W lies on the ray {lambda V : lambda > 0} within `tol.ray`.
bool same_ray(const ComplexMatrix& w, const ComplexMatrix& v, const Tolerances& tol = {});

}  // namespace conewitness
