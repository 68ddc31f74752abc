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

namespace conewitness {

/// Every numerical threshold used by the library, in one place.
///
/// Operations take a `const Tolerances&` defaulting to `Tolerances{}`, so a
/// caller can override any single value without touching the others.
struct Tolerances {
  /// Hermiticity: ||A - A^dagger||_F <= hermitian * max(1, ||A||_F).
  double hermitian = 1e-12;
  /// ||U^dagger U - I||_F bound for unitaries supplied by callers.
  double unitary = 1e-10;
  /// ||U + U^T||_F bound for antisymmetric matrices supplied by callers.
  double antisymmetric = 1e-10;
  /// Allowed imaginary residue of a Hermitian pairing, relative to max(1, ||W||_F).
  double pairing_imag = 1e-12;
  /// Unit-norm check for vectors handed to the library.
  double unit_norm = 1e-12;
  /// A product pair lies on the dual face when |pairing| <= zero_pairing.
  double zero_pairing = 1e-9;
  /// Block-positivity is refuted when the certified minimum is below -block_positivity.
  double block_positivity = 1e-9;
  /// Complete positivity: lambda_min(choi) >= -cp_relative * ||choi||_F.
  double cp_relative = 1e-10;
  /// Density-matrix checks (PSD and unit trace).
  double state = 1e-10;
  /// Entanglement is detected when Tr(rho W) < -detection.
  double detection = 1e-9;
  /// Null-space rank cutoff, relative to the largest singular value.
  double nullspace_relative = 1e-8;
  /// Ray proportionality distance between Frobenius-normalized Choi matrices.
  double ray = 1e-8;
};

/// Parameters of the alternating (see-saw) minimization over product vectors.
struct SeeSawConfig {
  int restarts = 64;
  int max_iters = 500;
  /// A restart is stationary once one full sweep improves the value by no more
  /// than stationarity * max(1, |value|).
  double stationarity = 1e-12;
  /// Stop launching restarts once some restart reaches a value below this.
  /// Unset means all restarts run.
  bool has_stop_below = false;
  double stop_below = 0.0;
};

}  // namespace conewitness
