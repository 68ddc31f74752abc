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

#include <string>
#include <variant>
#include <vector>

#include "conewitness/map_core.hpp"

namespace conewitness {

/// Parameters (a, b, c) of the generalized Choi map on M_3.
struct ChoiFamilyParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// A 2n x 2n matrix with U^T = -U and U^dagger U = I.
class AntisymmetricUnitary {
 public:
  /// Throws OddDimension, NotAntisymmetric or NotUnitary (checked in that order).
  static AntisymmetricUnitary make(ComplexMatrix u, const Tolerances& tol = {});

  const ComplexMatrix& matrix() const { return u_; }
  int dim() const { return static_cast<int>(u_.rows()); }

 private:
  explicit AntisymmetricUnitary(ComplexMatrix u) : u_(std::move(u)) {}
  ComplexMatrix u_;
};

namespace descriptor {
struct Transposition { int n; };
struct Ad { ComplexMatrix v; };
struct CoAd { ComplexMatrix v; };
struct Reduction { int n; };
struct ChoiFamily { ChoiFamilyParams params; };
struct BreuerHall { AntisymmetricUnitary u; };
struct Robertson {};
struct FromChoi { ComplexMatrix w; int n; int m; };
}  // namespace descriptor

/// Names one member of the map catalog together with its parameters.
using MapDescriptor = std::variant<descriptor::Transposition, descriptor::Ad, descriptor::CoAd, descriptor::Reduction,
                                   descriptor::ChoiFamily, descriptor::BreuerHall, descriptor::Robertson,
                                   descriptor::FromChoi>;

std::string descriptor_name(const MapDescriptor& d);
LinearMatrixMap build_map(const MapDescriptor& d, const Tolerances& tol = {});

/// tau(X) = X^T on M_n.
LinearMatrixMap transposition(int n);

/// phi_V(X) = V X V^dagger for V of size m x n.
LinearMatrixMap ad_map(const ComplexMatrix& v);

/// phi^V(X) = V X^T V^dagger for V of size m x n.
LinearMatrixMap co_ad_map(const ComplexMatrix& v);

/// R_n(X) = I_n Tr X - X, n >= 2.
LinearMatrixMap reduction(int n);

/// phi[a,b,c] on M_3: diagonal (a x11 + b x22 + c x33, c x11 + a x22 + b x33,
/// b x11 + c x22 + a x33), off-diagonal entries -x_ij. Throws NegativeParameter.
LinearMatrixMap choi_family(const ChoiFamilyParams& p);

/// The three conditions under which phi[a,b,c] is positive but not completely
/// positive: a < 2, a + b + c >= 2, and bc >= (1 - a)^2 whenever a <= 1.
/// For a >= 2 the map is completely positive and this returns false.
bool choi_family_is_positive(const ChoiFamilyParams& p);

/// phi[a,b,c] is completely positive iff a >= 2 (given b, c >= 0).
bool choi_family_is_completely_positive(const ChoiFamilyParams& p);

/// bc < (2 - a)^2 / 4. Throws NotPositiveMap unless choi_family_is_positive.
bool choi_family_is_indecomposable(const ChoiFamilyParams& p);

/// phi_BH(X) = I Tr X - X - U X^T U^dagger.
LinearMatrixMap breuer_hall(const AntisymmetricUnitary& u);

/// The Robertson map on M_4 in 2 x 2 block form: diagonal blocks I_2 Tr X_22
/// and I_2 Tr X_11, off-diagonal blocks -(X_12 + R_2(X_21)) and -(X_21 + R_2(X_12)).
LinearMatrixMap robertson();

/// U = I_2 (x) sigma_y, the antisymmetric unitary that turns phi_BH into the Robertson map.
AntisymmetricUnitary robertson_unitary();

/// D_ij = V (e_ij - e_ji) V^T for 1 <= i < j <= dim, each antisymmetric with
/// Frobenius norm sqrt(2). Throws NotUnitary.
std::vector<ComplexMatrix> antisym_basis(const ComplexMatrix& v, int dim, const Tolerances& tol = {});

/// U = V (I_{dim/2} (x) sigma_y) V^T for a Haar-random V. Throws OddDimension.
AntisymmetricUnitary random_antisymmetric_unitary(int dim, Rng& rng);

}  // namespace conewitness
