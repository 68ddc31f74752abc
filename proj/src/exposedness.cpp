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

#include "conewitness/exposedness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "conewitness/errors.hpp"
#include "conewitness/kernels.hpp"

namespace conewitness {

namespace {

// Coefficients of the complex functional W -> <u|W|v> in HermitianParamVector coordinates.
void sesquilinear_row(const ComplexVector& u, const ComplexVector& v, Eigen::Ref<Eigen::VectorXcd> row) {
  const int d = static_cast<int>(u.size());
  const double inv_s2 = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < d; ++a) row(a) = std::conj(u(a)) * v(a);
  int k = d;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      const Complex p = std::conj(u(a)) * v(b);
      const Complex s = std::conj(u(b)) * v(a);
      row(k++) = (p + s) * inv_s2;
      row(k++) = Complex(0.0, 1.0) * (p - s) * inv_s2;
    }
  }
}

RealVector value_row(const ComplexVector& v) {
  Eigen::VectorXcd row(v.size() * v.size());
  sesquilinear_row(v, v, row);
  return row.real();
}

int rows_per_pair(FaceConstraintKind kind, int n, int m) {
  return kind == FaceConstraintKind::kValue ? 1 : 1 + 2 * (n + m);
}

void fill_pair_rows(const ProductPair& pair, int n, int m, FaceConstraintKind kind, RealMatrix& out,
                    Eigen::Index first_row) {
  const ComplexVector a = pair.x.conjugate();
  const ComplexVector& b = pair.y;
  const ComplexVector v = kron(a, b);
  const int d = n * m;
  Eigen::VectorXcd row(static_cast<Eigen::Index>(d) * d);
  sesquilinear_row(v, v, row);
  out.row(first_row) = row.real().transpose();
  if (kind == FaceConstraintKind::kValue) return;
  Eigen::Index r = first_row + 1;
  for (int k = 0; k < m; ++k) {
    ComplexVector ek = ComplexVector::Zero(m);
    ek(k) = 1.0;
    sesquilinear_row(kron(a, ek), v, row);
    out.row(r++) = row.real().transpose();
    out.row(r++) = row.imag().transpose();
  }
  for (int i = 0; i < n; ++i) {
    ComplexVector ei = ComplexVector::Zero(n);
    ei(i) = 1.0;
    sesquilinear_row(kron(ei, b), v, row);
    out.row(r++) = row.real().transpose();
    out.row(r++) = row.imag().transpose();
  }
}

ComplexVector orthogonal_unit(const ComplexVector& against, Rng& rng) {
  for (;;) {
    ComplexVector y = random_unit_vector(static_cast<int>(against.size()), rng);
    y -= against * against.dot(y);
    const double norm = y.norm();
    if (norm > 1e-6) return y / norm;
  }
}

// Analytic generators; returns false when the descriptor has none.
bool analytic_pair(const MapDescriptor& d, int index, Rng& rng, ProductPair& out) {
  if (const auto* t = std::get_if<descriptor::Transposition>(&d)) {
    ComplexVector x = random_unit_vector(t->n, rng);
    out = ProductPair{x, orthogonal_unit(x.conjugate(), rng)};
    return true;
  }
  if (const auto* r = std::get_if<descriptor::Reduction>(&d)) {
    ComplexVector x = random_unit_vector(r->n, rng);
    out = ProductPair{x, x};
    return true;
  }
  const ComplexMatrix* u = nullptr;
  ComplexMatrix robertson_u;
  if (const auto* b = std::get_if<descriptor::BreuerHall>(&d)) {
    u = &b->u.matrix();
  } else if (std::holds_alternative<descriptor::Robertson>(d)) {
    robertson_u = robertson_unitary().matrix();
    u = &robertson_u;
  }
  if (u == nullptr) return false;
  ComplexVector x = random_unit_vector(static_cast<int>(u->rows()), rng);
  if (index % 2 == 0) {
    out = ProductPair{x, x};
  } else {
    ComplexVector y = *u * x.conjugate();
    out = ProductPair{x, y};
  }
  return true;
}

// Random unit vector in the span of the eigenvectors whose eigenvalue is within
// `slack` of the smallest one.
ComplexVector random_bottom_vector(const ComplexMatrix& a, double slack, Rng& rng) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  const RealVector& values = es.eigenvalues();
  Eigen::Index k = 1;
  while (k < values.size() && values(k) <= values(0) + slack) ++k;
  ComplexVector v = es.eigenvectors().leftCols(k) * random_unit_vector(static_cast<int>(k), rng);
  return v / v.norm();
}

// See-saw in which every half-step draws a random vector from the near-bottom
// eigenspace. A deterministic choice there would pin harvested pairs to special
// points of degenerate zero sets (and, with several components, to only one of
// them). Stops at stationarity; a negative `stationarity` runs all sweeps.
double randomized_seesaw(const ComplexMatrix& w, int n, int m, SeeSawOrder order, int sweeps, double slack,
                         ComplexVector& x, ComplexVector& z, Rng& rng, double stationarity = 1e-12) {
  ComplexMatrix contracted;
  double value = std::numeric_limits<double>::infinity();
  const auto move_z = [&] {
    kernels::contract_first(w, x, n, m, contracted);
    z = random_bottom_vector(contracted, slack, rng);
  };
  const auto move_x = [&] {
    kernels::contract_second(w, z, n, m, contracted);
    x = random_bottom_vector(contracted, slack, rng);
  };
  for (int s = 0; s < sweeps; ++s) {
    if (order == SeeSawOrder::kOutputFirst) {
      move_z();
      move_x();
    } else {
      move_x();
      move_z();
    }
    const double previous = value;
    value = x.dot(contracted * x).real();
    if (order == SeeSawOrder::kInputFirst) value = z.dot(contracted * z).real();
    if (stationarity >= 0.0 && previous - value <= stationarity * std::max(1.0, std::abs(value))) break;
  }
  return value;
}

bool has_analytic_generator(const MapDescriptor& d) {
  return std::holds_alternative<descriptor::Transposition>(d) || std::holds_alternative<descriptor::Reduction>(d) ||
         std::holds_alternative<descriptor::BreuerHall>(d) || std::holds_alternative<descriptor::Robertson>(d);
}

}  // namespace

DualFaceSample dual_face_samples(const MapDescriptor& d, int count, Rng& rng, const ExposednessConfig& config) {
  if (count < 1) throw Error(ErrorKind::kPreconditionViolated, "dual_face_samples needs count >= 1");
  const LinearMatrixMap phi = build_map(d, config.tol);
  const int n = phi.dim_in();
  const int m = phi.dim_out();
  const ComplexMatrix& w = phi.choi();
  const double zero_tol = config.tol.zero_pairing;

  DualFaceSample out;
  out.dim_in = n;
  out.dim_out = m;
  out.pairs.reserve(static_cast<std::size_t>(count));

  if (has_analytic_generator(d)) {
    out.source = FaceSource::kAnalytic;
    const std::int64_t max_attempts = 4LL * count + 16;
    for (std::int64_t attempt = 0; attempt < max_attempts && static_cast<int>(out.pairs.size()) < count; ++attempt) {
      ProductPair pair;
      analytic_pair(d, static_cast<int>(out.pairs.size()), rng, pair);
      if (std::abs(witness_pairing(w, pair.x, pair.y, config.tol)) <= zero_tol) out.pairs.push_back(std::move(pair));
    }
  } else {
    out.source = FaceSource::kNumeric;
    const double scale = std::max(1.0, w.norm());
    const double gradient_tol = 10.0 * zero_tol * scale;
    const double slack = zero_tol * scale;
    ComplexMatrix contracted;
    const std::int64_t max_attempts = static_cast<std::int64_t>(config.harvest_attempt_factor) * count;
    for (std::int64_t attempt = 0; attempt < max_attempts && static_cast<int>(out.pairs.size()) < count; ++attempt) {
      const SeeSawOrder order = attempt % 2 == 0 ? SeeSawOrder::kOutputFirst : SeeSawOrder::kInputFirst;
      ComplexVector x = random_unit_vector(n, rng);
      ComplexVector z = random_unit_vector(m, rng);
      const double value = randomized_seesaw(w, n, m, order, config.certify.max_iters, slack, x, z, rng);
      if (std::abs(value) > 1e3 * zero_tol) continue;
      randomized_seesaw(w, n, m, order, config.polish_iters, slack, x, z, rng, -1.0);
      // x and z are witness factors; the pair is (conj(x), z).
      if (std::abs(kernels::hermitian_form(w, kron(x, z))) > zero_tol) continue;
      kernels::contract_first(w, x, n, m, contracted);
      if ((contracted * z).norm() > gradient_tol) continue;
      kernels::contract_second(w, z, n, m, contracted);
      if ((contracted * x).norm() > gradient_tol) continue;
      ProductPair pair{x.conjugate(), std::move(z)};
      if (std::abs(witness_pairing(w, pair.x, pair.y, config.tol)) > zero_tol) continue;
      out.pairs.push_back(std::move(pair));
    }
  }
  if (static_cast<int>(out.pairs.size()) < count) {
    throw Error(ErrorKind::kInsufficientZeros, "found " + std::to_string(out.pairs.size()) + " of " +
                                                   std::to_string(count) + " dual-face pairs");
  }
  return out;
}

RealMatrix face_constraint_matrix(const DualFaceSample& samples, int n, int m, FaceConstraintKind kind) {
  if (samples.pairs.empty()) throw Error(ErrorKind::kPreconditionViolated, "no dual-face samples");
  const int d = n * m;
  const int per = rows_per_pair(kind, n, m);
  RealMatrix out(static_cast<Eigen::Index>(samples.pairs.size()) * per, static_cast<Eigen::Index>(d) * d);
  for (std::size_t p = 0; p < samples.pairs.size(); ++p) {
    const ProductPair& pair = samples.pairs[p];
    if (pair.x.size() != n || pair.y.size() != m) {
      throw Error(ErrorKind::kDimensionMismatch, "sample pair does not match the map dimensions");
    }
    fill_pair_rows(pair, n, m, kind, out, static_cast<Eigen::Index>(p) * per);
  }
  return out;
}

namespace {

void append_constraints(const DualFaceSample& samples, int n, int m, FaceConstraintKind kind,
                        RowCompressor& compressor) {
  constexpr std::size_t kBatch = 64;
  for (std::size_t start = 0; start < samples.pairs.size(); start += kBatch) {
    DualFaceSample chunk;
    chunk.dim_in = n;
    chunk.dim_out = m;
    const std::size_t stop = std::min(samples.pairs.size(), start + kBatch);
    chunk.pairs.assign(samples.pairs.begin() + static_cast<std::ptrdiff_t>(start),
                       samples.pairs.begin() + static_cast<std::ptrdiff_t>(stop));
    compressor.append(face_constraint_matrix(chunk, n, m, kind));
  }
}

}  // namespace

DoubleDualNullspace double_dual_nullspace(const MapDescriptor& d, int sample_count, double rel_tol, Rng& rng,
                                          const ExposednessConfig& config) {
  const LinearMatrixMap phi = build_map(d, config.tol);
  const int n = phi.dim_in();
  const int m = phi.dim_out();
  const int dim = n * m;
  const int minimum = 2 * dim * dim;
  if (sample_count < minimum) {
    throw Error(ErrorKind::kPreconditionViolated,
                "sample_count must be at least 2 (nm)^2 = " + std::to_string(minimum));
  }

  DualFaceSample first = dual_face_samples(d, sample_count, rng, config);
  DualFaceSample second = dual_face_samples(d, sample_count, rng, config);

  RowCompressor compressor(dim * dim);
  append_constraints(first, n, m, config.constraints, compressor);
  const NullSpace ns_first = svd_nullspace(compressor.factor(), rel_tol);
  append_constraints(second, n, m, config.constraints, compressor);
  const NullSpace ns = svd_nullspace(compressor.factor(), rel_tol);

  DoubleDualNullspace out;
  out.dim_first_batch = static_cast<int>(ns_first.basis.cols());
  out.dim = static_cast<int>(ns.basis.cols());
  if (out.dim != out.dim_first_batch) {
    throw Error(ErrorKind::kUnstableDimension, "null-space dimension " + std::to_string(out.dim_first_batch) +
                                                   " at " + std::to_string(sample_count) + " samples but " +
                                                   std::to_string(out.dim) + " after doubling");
  }
  out.basis_coords = ns.basis;
  out.basis.reserve(static_cast<std::size_t>(out.dim));
  for (int k = 0; k < out.dim; ++k) out.basis.push_back(hermitian_from_coords(ns.basis.col(k), dim));

  const Eigen::Index sv = ns.singular_values.size();
  out.smallest_kept = ns.rank > 0 && ns.sigma_max > 0 ? ns.singular_values(ns.rank - 1) / ns.sigma_max : 0.0;
  out.largest_dropped = ns.rank < sv && ns.sigma_max > 0 ? ns.singular_values(ns.rank) / ns.sigma_max : 0.0;

  const RealVector c = hermitian_coords(phi.choi());
  const RealVector projected = ns.basis * (ns.basis.transpose() * c);
  out.self_residual = c.norm() > 0 ? (c - projected).norm() / c.norm() : 0.0;
  out.contains_map = out.self_residual <= 10.0 * rel_tol;

  out.samples = std::move(first);
  out.samples.pairs.insert(out.samples.pairs.end(), std::make_move_iterator(second.pairs.begin()),
                           std::make_move_iterator(second.pairs.end()));
  return out;
}

bool validate_counterexample(const LinearMatrixMap& phi, const ComplexMatrix& candidate, const DualFaceSample& samples,
                             Rng& rng, const ExposednessConfig& config, Counterexample* out) {
  const double norm = candidate.norm();
  if (norm == 0.0 || !is_hermitian(candidate, config.tol.hermitian)) return false;
  const ComplexMatrix w = candidate / norm;
  const int n = phi.dim_in();
  const int m = phi.dim_out();

  const double distance = ray_distance(w, phi.choi());
  if (distance <= config.tol.ray) return false;

  double face_residual = 0.0;
  for (const ProductPair& p : samples.pairs) {
    face_residual = std::max(face_residual, std::abs(witness_pairing(w, p.x, p.y, config.tol)));
  }
  if (face_residual > 1e-8) return false;

  BlockPositivityVerdict bp = is_block_positive(w, n, m, config.certify, rng, config.tol);
  if (bp.verdict != BlockPositivity::kEvidenceBlockPositive) return false;

  if (out != nullptr) {
    out->choi = w;
    out->evidence = std::move(bp.report);
    out->ray_distance = distance;
    out->max_face_residual = face_residual;
  }
  return true;
}

std::optional<Counterexample> cone_search_off_ray(const LinearMatrixMap& phi, const DoubleDualNullspace& nullspace,
                                                  int budget, Rng& rng, const ExposednessConfig& config) {
  const int k = nullspace.dim;
  if (k < 2 || budget < 1) return std::nullopt;
  const int n = phi.dim_in();
  const int m = phi.dim_out();
  const int dim = n * m;
  const RealMatrix& basis = nullspace.basis_coords;

  RealVector ray = basis.transpose() * hermitian_coords(phi.choi());
  if (ray.norm() == 0.0) return std::nullopt;
  ray.normalize();
  const double cos_min = std::cos(config.min_off_ray_angle);
  const double sin_min = std::sin(config.min_off_ray_angle);

  // Seeds are drawn up front so each candidate is a pure function of its index.
  std::vector<Rng::result_type> seeds(static_cast<std::size_t>(budget));
  for (auto& s : seeds) s = rng();

  std::normal_distribution<double> normal(0.0, 1.0);
  for (int cand = 0; cand < budget; ++cand) {
    Rng local(seeds[static_cast<std::size_t>(cand)]);
    RealVector c(k);
    for (int i = 0; i < k; ++i) c(i) = normal(local);
    c.normalize();

    for (int step = 0; step <= config.ascent_steps; ++step) {
      const double along = c.dot(ray);
      if (along > cos_min) {
        RealVector orth = c - along * ray;
        if (orth.norm() < 1e-12) {
          for (int i = 0; i < k; ++i) orth(i) = normal(local);
          orth -= orth.dot(ray) * ray;
        }
        c = cos_min * ray + sin_min * orth.normalized();
      }
      const ComplexMatrix w = hermitian_from_coords(basis * c, dim);
      const BlockPositivityReport rep = block_positivity_min(w, n, m, config.search, local, config.tol);
      if (rep.min_value >= -config.tol.block_positivity) {
        Counterexample found;
        if (validate_counterexample(phi, w, nullspace.samples, local, config, &found)) {
          found.candidate_index = cand;
          return found;
        }
        break;
      }
      if (step == config.ascent_steps) break;
      const RealVector g = basis.transpose() * value_row(witness_vector(rep.argmin.x, rep.argmin.y));
      const double g2 = g.squaredNorm();
      if (g2 == 0.0) break;
      c += config.relaxation * (-rep.min_value) / g2 * g;
      c.normalize();
    }
  }
  return std::nullopt;
}

std::string_view verdict_name(ExposedVerdict v) {
  switch (v) {
    case ExposedVerdict::kCertifiedExposed: return "CERTIFIED_EXPOSED";
    case ExposedVerdict::kConsistentWithExposed: return "CONSISTENT_WITH_EXPOSED";
    case ExposedVerdict::kNotExposed: return "NOT_EXPOSED";
  }
  return "UNKNOWN";
}

ExposednessReport exposedness_report(const MapDescriptor& d, const ExposednessConfig& config, Rng& rng) {
  const LinearMatrixMap phi = build_map(d, config.tol);
  const int n = phi.dim_in();
  const int m = phi.dim_out();

  ExposednessReport report;
  BlockPositivityVerdict bp = is_block_positive(phi.choi(), n, m, config.certify, rng, config.tol);
  report.positivity = bp.report;
  if (bp.verdict == BlockPositivity::kCertifiedNotBlockPositive) {
    throw Error(ErrorKind::kNotPositiveMap,
                "product-state pairing reaches " + std::to_string(bp.report.min_value) + ", map is not positive");
  }

  const int dim = n * m;
  const int samples = config.sample_count > 0 ? config.sample_count : 2 * dim * dim;
  const DoubleDualNullspace ns = double_dual_nullspace(d, samples, config.tol.nullspace_relative, rng, config);
  report.nullspace_dim = ns.dim;
  report.nullspace_dim_first_batch = ns.dim_first_batch;
  report.samples_used = static_cast<int>(ns.samples.pairs.size());
  report.source = ns.samples.source;
  report.self_residual = ns.self_residual;
  report.smallest_kept = ns.smallest_kept;
  report.largest_dropped = ns.largest_dropped;

  if (ns.dim == 1 && ns.contains_map) {
    report.verdict = ExposedVerdict::kCertifiedExposed;
    return report;
  }
  report.searched = true;
  report.counterexample = cone_search_off_ray(phi, ns, config.budget, rng, config);
  report.verdict = report.counterexample ? ExposedVerdict::kNotExposed : ExposedVerdict::kConsistentWithExposed;
  return report;
}

SpanningResult optimality_spanning_check(const MapDescriptor& d, int sample_count, Rng& rng,
                                         const ExposednessConfig& config) {
  const DualFaceSample samples = dual_face_samples(d, sample_count, rng, config);
  const int dim = samples.dim_in * samples.dim_out;
  ComplexMatrix stacked(static_cast<Eigen::Index>(samples.pairs.size()), dim);
  for (std::size_t p = 0; p < samples.pairs.size(); ++p) {
    stacked.row(static_cast<Eigen::Index>(p)) =
        witness_vector(samples.pairs[p].x, samples.pairs[p].y).transpose();
  }
  Eigen::BDCSVD<ComplexMatrix> svd(stacked);
  const RealVector s = svd.singularValues();
  SpanningResult out;
  out.samples_used = static_cast<int>(samples.pairs.size());
  const double cutoff = s.size() > 0 ? config.tol.nullspace_relative * s(0) : 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cutoff) ++out.span_dim;
  }
  out.spans = out.span_dim == dim;
  return out;
}

double verify_lemma1(const ComplexMatrix& v, const ComplexVector& x, const Tolerances& tol) {
  const int dim = static_cast<int>(v.rows());
  if (dim < 2 || dim % 2 != 0) throw Error(ErrorKind::kPreconditionViolated, "dimension must be even");
  if (x.size() != dim) throw Error(ErrorKind::kDimensionMismatch, "x does not match V");
  if (std::abs(x.norm() - 1.0) > tol.unit_norm) {
    throw Error(ErrorKind::kPreconditionViolated, "x must be a unit vector");
  }
  const ComplexVector xbar = x.conjugate();
  ComplexMatrix lhs = ComplexMatrix::Zero(dim, dim);
  for (const ComplexMatrix& dij : antisym_basis(v, dim, tol)) {
    const ComplexVector image = dij * xbar;
    lhs += image * image.adjoint();
  }
  const ComplexMatrix rhs = ComplexMatrix::Identity(dim, dim) - x * x.adjoint();
  return (lhs - rhs).norm();
}

BhStructureReport verify_bh_structure(const AntisymmetricUnitary& u, const ComplexVector& x, const Tolerances& tol) {
  const int dim = u.dim();
  if (x.size() != dim) throw Error(ErrorKind::kDimensionMismatch, "x does not match U");
  if (std::abs(x.norm() - 1.0) > tol.unit_norm) {
    throw Error(ErrorKind::kPreconditionViolated, "x must be a unit vector");
  }
  const ComplexMatrix& um = u.matrix();
  const LinearMatrixMap bh = breuer_hall(u);
  const ComplexMatrix px = x * x.adjoint();
  const ComplexVector ux = um * x.conjugate();
  const ComplexMatrix identity = ComplexMatrix::Identity(dim, dim);

  BhStructureReport r;
  const ComplexMatrix p1 = (identity - px) - ux * ux.adjoint();
  r.p1_residual = (apply(bh, px) - p1).norm();
  r.p1_ok = r.p1_residual <= 1e-11;

  r.remark1_residual = (bh.choi() + co_ad_map(um).choi() - reduction(dim).choi()).norm();
  r.remark1_ok = r.remark1_residual <= 1e-12;

  r.orthogonality_residual = std::abs(x.dot(ux));
  r.orthogonality_ok = r.orthogonality_residual <= 1e-12;

  const ComplexMatrix p2 = ux * ux.adjoint() - (identity - px);
  const BottomEigenpair bottom = bottom_eigenpair(p2);
  r.p2_min_value = bottom.value;
  r.p2_witness = bottom.vector;
  r.p2_not_positive = r.p2_min_value < -tol.block_positivity;
  return r;
}

ConvexSplitCheck check_convex_split(const LinearMatrixMap& phi, const ComplexMatrix& w1, const ComplexMatrix& w2,
                                    const SeeSawConfig& config, Rng& rng, const Tolerances& tol) {
  const int n = phi.dim_in();
  const int m = phi.dim_out();
  ConvexSplitCheck out;
  out.sum_residual = (w1 + w2 - 2.0 * phi.choi()).norm();
  BlockPositivityVerdict a = is_block_positive(w1, n, m, config, rng, tol);
  BlockPositivityVerdict b = is_block_positive(w2, n, m, config, rng, tol);
  out.first = a.report;
  out.second = b.report;
  out.first_off_ray = !same_ray(w1, phi.choi(), tol);
  out.second_off_ray = !same_ray(w2, phi.choi(), tol);
  out.witnesses_non_extreme = out.sum_residual <= 1e-12 * std::max(1.0, phi.choi().norm()) &&
                              a.verdict == BlockPositivity::kEvidenceBlockPositive &&
                              b.verdict == BlockPositivity::kEvidenceBlockPositive && out.first_off_ray &&
                              out.second_off_ray;
  return out;
}

}  // namespace conewitness
