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

#include <optional>
#include <string_view>
#include <vector>

#include "conewitness/config.hpp"
#include "conewitness/map_catalog.hpp"
#include "conewitness/positivity.hpp"

namespace conewitness {

enum class FaceSource { kAnalytic, kNumeric };

/// Product pairs on the dual face [phi]': every pair has |<y|phi(P_x)|y>| <= zero_pairing.
struct DualFaceSample {
  std::vector<ProductPair> pairs;
  FaceSource source = FaceSource::kAnalytic;
  int dim_in = 0;
  int dim_out = 0;
};

enum class FaceConstraintKind {
  /// One row per pair: W -> <v|W|v> with v = conj(x) (x) y.
  kValue,
  /// Value rows plus the first-order rows that every block-positive W vanishing
  /// at v must satisfy: (<conj(x)| (x) I) W v = 0 and (I (x) <y|) W v = 0,
  /// split into real and imaginary parts.
  kValueAndTangent,
};

struct ExposednessConfig {
  /// Dual-face pairs per batch; 0 selects the minimum 2 (nm)^2.
  int sample_count = 0;
  /// Cone-search candidates.
  int budget = 2000;
  FaceConstraintKind constraints = FaceConstraintKind::kValueAndTangent;
  /// Relaxation steps per cone-search candidate.
  int ascent_steps = 40;
  /// Over-relaxation factor of the cutting step, in (0, 2).
  double relaxation = 1.5;
  /// Cone-search candidates are kept at least this angle (radians) away from the ray of phi.
  double min_off_ray_angle = 0.1;
  /// Used for the block-positivity certificate of phi and of any counterexample.
  SeeSawConfig certify{};
  /// Used inside the cone-search inner loop.
  SeeSawConfig search{8, 300, 1e-12, false, 0.0};
  /// Numeric dual-face harvesting makes at most this many see-saw runs per requested pair.
  int harvest_attempt_factor = 20;
  /// Extra sweeps spent polishing each harvested pair.
  int polish_iters = 25;
  Tolerances tol{};
};

/// Samples the dual face. Known families use closed-form generators:
/// transposition (y orthogonal to conj(x)), reduction (y = x), Breuer-Hall and
/// Robertson (y = x or y = U conj(x), alternating). Everything else harvests
/// zeros of see-saw runs, alternating which factor moves first. Harvested
/// pairs must also be stationary (both contracted gradients near zero).
/// Every pair is re-validated through witness_pairing.
/// Throws InsufficientZeros when fewer than `count` pairs are found.
DualFaceSample dual_face_samples(const MapDescriptor& d, int count, Rng& rng, const ExposednessConfig& config = {});

/// Real constraint rows over HermitianParamVector coordinates of an nm x nm
/// Hermitian matrix, for every pair of `samples`.
RealMatrix face_constraint_matrix(const DualFaceSample& samples, int n, int m,
                                  FaceConstraintKind kind = FaceConstraintKind::kValue);

struct DoubleDualNullspace {
  int dim = 0;
  /// Null-space dimension after the first batch of samples only.
  int dim_first_batch = 0;
  RealMatrix basis_coords;  // (nm)^2 x dim, orthonormal columns
  std::vector<ComplexMatrix> basis;
  DualFaceSample samples;  // both batches
  /// ||c - B B^T c|| / ||c|| for the coordinates c of the map's own Choi matrix.
  double self_residual = 0.0;
  bool contains_map = false;
  /// Smallest retained and largest discarded singular value, relative to sigma_max.
  double smallest_kept = 0.0;
  double largest_dropped = 0.0;
};

/// Null space of the face constraints: the linear hull candidate for [phi]''.
/// Computed at `sample_count` pairs and again after adding as many fresh pairs;
/// throws UnstableDimension if the two dimensions differ.
DoubleDualNullspace double_dual_nullspace(const MapDescriptor& d, int sample_count, double rel_tol, Rng& rng,
                                          const ExposednessConfig& config = {});

struct Counterexample {
  ComplexMatrix choi;  // Frobenius-normalized
  BlockPositivityReport evidence;
  double ray_distance = 0.0;
  double max_face_residual = 0.0;
  int candidate_index = 0;
};

/// Looks for a block-positive element of the null space off the ray of phi.
/// Each candidate starts from a random unit combination of basis elements and
/// is refined by cutting steps: the see-saw argmin v gives the supergradient
/// (<v|B_k|v>)_k, and the coefficients move along it far enough to lift the
/// pairing at v to zero. A candidate is returned only after an independent
/// re-check of block-positivity, ray distance and face constraints.
std::optional<Counterexample> cone_search_off_ray(const LinearMatrixMap& phi, const DoubleDualNullspace& nullspace,
                                                  int budget, Rng& rng, const ExposednessConfig& config = {});

/// Re-verifies a counterexample candidate from scratch.
bool validate_counterexample(const LinearMatrixMap& phi, const ComplexMatrix& candidate, const DualFaceSample& samples,
                             Rng& rng, const ExposednessConfig& config, Counterexample* out = nullptr);

enum class ExposedVerdict { kCertifiedExposed, kConsistentWithExposed, kNotExposed };

std::string_view verdict_name(ExposedVerdict v);

struct ExposednessReport {
  ExposedVerdict verdict = ExposedVerdict::kConsistentWithExposed;
  int nullspace_dim = 0;
  int nullspace_dim_first_batch = 0;
  std::optional<Counterexample> counterexample;
  int samples_used = 0;
  FaceSource source = FaceSource::kAnalytic;
  BlockPositivityReport positivity;
  double self_residual = 0.0;
  double smallest_kept = 0.0;
  double largest_dropped = 0.0;
  bool searched = false;
};

/// CERTIFIED_EXPOSED when the null space is one-dimensional, NOT_EXPOSED when
/// the cone search returns a validated counterexample, CONSISTENT_WITH_EXPOSED
/// otherwise. Throws NotPositiveMap if phi fails the block-positivity check.
ExposednessReport exposedness_report(const MapDescriptor& d, const ExposednessConfig& config, Rng& rng);

struct SpanningResult {
  bool spans = false;
  int span_dim = 0;
  int samples_used = 0;
};

/// Complex rank of the stacked dual-face vectors conj(x) (x) y.
SpanningResult optimality_spanning_check(const MapDescriptor& d, int sample_count, Rng& rng,
                                         const ExposednessConfig& config = {});

/// ||sum_{i<j} D_ij |conj(x)><conj(x)| D_ij^dagger - (I - |x><x|)||_F with
/// D_ij = antisym_basis(V). Throws PreconditionViolated unless x is a unit
/// vector and the dimension is even.
double verify_lemma1(const ComplexMatrix& v, const ComplexVector& x, const Tolerances& tol = {});

struct BhStructureReport {
  /// (i) ||phi_BH(P_x) - (I - P_x) + U P_conj(x) U^dagger||_F
  double p1_residual = 0.0;
  /// (ii) ||choi(phi_BH) + choi(phi^U) - choi(R_2n)||_F
  double remark1_residual = 0.0;
  /// (iii) |<x|U conj(x)>|
  double orthogonality_residual = 0.0;
  /// (iv) smallest <y|Q|y> for Q = U P_conj(x) U^dagger - (I - P_x), and its minimizer y
  double p2_min_value = 0.0;
  ComplexVector p2_witness;

  bool p1_ok = false;
  bool remark1_ok = false;
  bool orthogonality_ok = false;
  bool p2_not_positive = false;
  bool all_pass() const { return p1_ok && remark1_ok && orthogonality_ok && p2_not_positive; }
};

/// Checks the structure behind the exposedness of phi_BH at one unit vector x.
BhStructureReport verify_bh_structure(const AntisymmetricUnitary& u, const ComplexVector& x,
                                      const Tolerances& tol = {});

struct ConvexSplitCheck {
  double sum_residual = 0.0;  // ||w1 + w2 - 2 choi(phi)||_F
  BlockPositivityReport first;
  BlockPositivityReport second;
  bool first_off_ray = false;
  bool second_off_ray = false;
  bool witnesses_non_extreme = false;
};

/// Checks that choi(phi) = (w1 + w2) / 2 with both parts block-positive and
/// off the ray of phi, which shows phi is not extreme.
ConvexSplitCheck check_convex_split(const LinearMatrixMap& phi, const ComplexMatrix& w1, const ComplexMatrix& w2,
                                    const SeeSawConfig& config, Rng& rng, const Tolerances& tol = {});

}  // namespace conewitness
