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

#include <vector>

#include "conewitness/config.hpp"
#include "conewitness/linalg.hpp"
#include "conewitness/map_core.hpp"

namespace conewitness {

/// Unit vectors (x, y) in map coordinates: the pair stands for P_x (x) P_y and
/// its witness pairing is <y|phi(P_x)|y> = <conj(x) (x) y|W|conj(x) (x) y>.
struct ProductPair {
  ComplexVector x;
  ComplexVector y;
};

struct BlockPositivityReport {
  double min_value = 0.0;
  ProductPair argmin;
  int restarts_used = 0;
  /// False when some restart hit max_iters before becoming stationary.
  bool converged = true;
  double tolerance = 0.0;
  int best_restart = -1;
  int total_iterations = 0;
};

/// One see-saw run from a fixed start, with the objective after every half-step.
struct SeeSawTrace {
  ProductPair pair;
  double value = 0.0;
  int iterations = 0;
  bool stationary = false;
  std::vector<double> history;
};

enum class SeeSawOrder {
  /// Each sweep updates z for the current x, then x for the new z.
  kOutputFirst,
  kInputFirst,
};

/// Alternating eigenvector descent of <a (x) b|W|a (x) b> from (a0, b0) = (x0, z0),
/// the witness factors; the returned pair is (conj(a), b). Every half-step replaces one
/// factor by the bottom eigenvector of the contracted matrix, so the objective
/// never increases.
SeeSawTrace seesaw_descent(const ComplexMatrix& w, int n, int m, ComplexVector x0, ComplexVector z0,
                           const SeeSawConfig& config, bool record_history = false,
                           SeeSawOrder order = SeeSawOrder::kOutputFirst);

/// Multistart see-saw estimate of min <x (x) y|W|x (x) y> over unit product
/// vectors. The value is an upper bound on the true minimum: it certifies a
/// violation exactly, and supports block-positivity only as evidence.
BlockPositivityReport block_positivity_min(const ComplexMatrix& w, int n, int m, const SeeSawConfig& config, Rng& rng,
                                           const Tolerances& tol = {});

enum class BlockPositivity { kCertifiedNotBlockPositive, kEvidenceBlockPositive };

struct BlockPositivityVerdict {
  BlockPositivity verdict;
  BlockPositivityReport report;
};

/// CERTIFIED_NOT_BP iff the see-saw minimum drops below -tol.block_positivity;
/// the report's argmin is then the violating pair. Restarts stop at the first
/// violation.
BlockPositivityVerdict is_block_positive(const ComplexMatrix& w, int n, int m, const SeeSawConfig& config, Rng& rng,
                                         const Tolerances& tol = {});

struct PositivityCertificate {
  bool holds = false;
  double min_eigenvalue = 0.0;
  ComplexVector eigenvector;  // bottom eigenvector of the tested Choi matrix
};

/// lambda_min(choi) >= -cp_relative * ||choi||_F.
PositivityCertificate is_completely_positive(const LinearMatrixMap& phi, const Tolerances& tol = {});

/// Complete positivity of phi o transpose.
PositivityCertificate is_completely_copositive(const LinearMatrixMap& phi, const Tolerances& tol = {});

struct DetectionResult {
  double value = 0.0;  // Tr(rho W)
  bool detected = false;
};

/// Tr(rho W) with verdict value < -tol.detection. Throws NotAState when rho is
/// not PSD or not of unit trace, DimensionMismatch on shape errors.
DetectionResult detect_entanglement(const ComplexMatrix& rho, const ComplexMatrix& w, const Tolerances& tol = {});

/// Throws NotAState unless rho is Hermitian, PSD and unit trace within tol.state.
void require_state(const ComplexMatrix& rho, const Tolerances& tol = {});

}  // namespace conewitness
