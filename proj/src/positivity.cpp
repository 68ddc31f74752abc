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

#include "conewitness/positivity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "conewitness/errors.hpp"
#include "conewitness/kernels.hpp"

namespace conewitness {

SeeSawTrace seesaw_descent(const ComplexMatrix& w, int n, int m, ComplexVector x0, ComplexVector z0,
                           const SeeSawConfig& config, bool record_history, SeeSawOrder order) {
  SeeSawTrace trace;
  ComplexVector x = std::move(x0);
  ComplexVector z = std::move(z0);
  ComplexMatrix contracted;
  double value = std::numeric_limits<double>::infinity();
  double last = value;
  const auto update_z = [&] {
    kernels::contract_first(w, x, n, m, contracted);
    BottomEigenpair b = bottom_eigenpair(contracted);
    z = std::move(b.vector);
    last = b.value;
    if (record_history) trace.history.push_back(last);
  };
  const auto update_x = [&] {
    kernels::contract_second(w, z, n, m, contracted);
    BottomEigenpair b = bottom_eigenpair(contracted);
    x = std::move(b.vector);
    last = b.value;
    if (record_history) trace.history.push_back(last);
  };
  for (int iter = 0; iter < config.max_iters; ++iter) {
    if (order == SeeSawOrder::kOutputFirst) {
      update_z();
      update_x();
    } else {
      update_x();
      update_z();
    }
    const double previous = value;
    value = last;
    trace.iterations = iter + 1;
    if (previous - value <= config.stationarity * std::max(1.0, std::abs(value))) {
      trace.stationary = true;
      break;
    }
  }
  trace.value = value;
  trace.pair = ProductPair{x.conjugate(), std::move(z)};
  return trace;
}

BlockPositivityReport block_positivity_min(const ComplexMatrix& w, int n, int m, const SeeSawConfig& config, Rng& rng,
                                           const Tolerances& tol) {
  if (n < 1 || m < 1 || w.rows() != static_cast<Eigen::Index>(n) * m) {
    throw Error(ErrorKind::kDimensionMismatch, "block_positivity_min: W must be nm x nm");
  }
  require_hermitian(w, tol.hermitian);
  if (config.restarts < 1 || config.max_iters < 1) {
    throw Error(ErrorKind::kPreconditionViolated, "see-saw needs restarts >= 1 and max_iters >= 1");
  }
  BlockPositivityReport report;
  report.tolerance = tol.block_positivity;
  report.min_value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < config.restarts; ++r) {
    ComplexVector x0 = random_unit_vector(n, rng);
    ComplexVector z0 = random_unit_vector(m, rng);
    SeeSawTrace t = seesaw_descent(w, n, m, std::move(x0), std::move(z0), config);
    report.restarts_used = r + 1;
    report.total_iterations += t.iterations;
    report.converged = report.converged && t.stationary;
    // Strict comparison: ties keep the lowest restart index.
    if (t.value < report.min_value) {
      report.min_value = t.value;
      report.argmin = std::move(t.pair);
      report.best_restart = r;
    }
    if (config.has_stop_below && report.min_value < config.stop_below) break;
  }
  // Re-evaluate at the returned pair so the reported value is exactly the pairing.
  report.min_value = witness_pairing(w, report.argmin.x, report.argmin.y, tol);
  return report;
}

BlockPositivityVerdict is_block_positive(const ComplexMatrix& w, int n, int m, const SeeSawConfig& config, Rng& rng,
                                         const Tolerances& tol) {
  SeeSawConfig cfg = config;
  cfg.has_stop_below = true;
  cfg.stop_below = -tol.block_positivity;
  BlockPositivityVerdict out{BlockPositivity::kEvidenceBlockPositive, block_positivity_min(w, n, m, cfg, rng, tol)};
  if (out.report.min_value < -tol.block_positivity) out.verdict = BlockPositivity::kCertifiedNotBlockPositive;
  return out;
}

PositivityCertificate is_completely_positive(const LinearMatrixMap& phi, const Tolerances& tol) {
  const EigenDecomposition e = eigh(phi.choi(), tol);
  PositivityCertificate cert;
  cert.min_eigenvalue = e.values(0);
  cert.eigenvector = e.vectors.col(0);
  fix_phase(cert.eigenvector);
  cert.holds = cert.min_eigenvalue >= -tol.cp_relative * phi.choi().norm();
  return cert;
}

PositivityCertificate is_completely_copositive(const LinearMatrixMap& phi, const Tolerances& tol) {
  return is_completely_positive(compose_with_transpose(phi), tol);
}

void require_state(const ComplexMatrix& rho, const Tolerances& tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw Error(ErrorKind::kNotAState, "density matrix must be square and nonempty");
  }
  if (!is_hermitian(rho, tol.hermitian)) throw Error(ErrorKind::kNotAState, "density matrix is not Hermitian");
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > tol.state) {
    throw Error(ErrorKind::kNotAState, "trace is " + std::to_string(trace) + ", expected 1");
  }
  const double lmin = eigh(rho, tol).values(0);
  if (lmin < -tol.state) {
    throw Error(ErrorKind::kNotAState, "density matrix has eigenvalue " + std::to_string(lmin));
  }
}

DetectionResult detect_entanglement(const ComplexMatrix& rho, const ComplexMatrix& w, const Tolerances& tol) {
  if (rho.rows() != w.rows() || rho.cols() != w.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "state and witness dimensions differ");
  }
  require_state(rho, tol);
  require_hermitian(w, tol.hermitian);
  DetectionResult out;
  out.value = (rho * w).trace().real();
  out.detected = out.value < -tol.detection;
  return out;
}

}  // namespace conewitness
