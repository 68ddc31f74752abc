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

#include "conewitness/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conewitness/errors.hpp"

namespace conewitness {

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.norm());
  return (a - a.adjoint()).norm() <= rel_tol * scale;
}

void require_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kNonHermitianInput,
                "matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ", not square");
  }
  if (!is_hermitian(a, rel_tol)) {
    throw Error(ErrorKind::kNonHermitianInput,
                "||A - A^dagger||_F = " + std::to_string((a - a.adjoint()).norm()));
  }
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm() <= tol;
}

EigenDecomposition eigh(const ComplexMatrix& a, const Tolerances& tol) {
  require_hermitian(a, tol.hermitian);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

BottomEigenpair bottom_eigenpair(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  BottomEigenpair out{solver.eigenvalues()(0), solver.eigenvectors().col(0)};
  fix_phase(out.vector);
  return out;
}

namespace {

RealMatrix upper_factor(const RealMatrix& m) {
  Eigen::HouseholderQR<RealMatrix> qr(m);
  const Eigen::Index k = std::min(m.rows(), m.cols());
  RealMatrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return r;
}

}  // namespace

NullSpace svd_nullspace(const RealMatrix& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw Error(ErrorKind::kPreconditionViolated, "svd_nullspace needs a nonempty matrix");
  }
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw Error(ErrorKind::kPreconditionViolated, "rel_tol must lie in (0, 1)");
  }
  const RealMatrix reduced = m.rows() > m.cols() ? upper_factor(m) : m;
  Eigen::BDCSVD<RealMatrix> svd(reduced, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorKind::kConvergenceFailure, "SVD did not converge");
  }
  NullSpace out;
  out.singular_values = svd.singularValues();
  out.sigma_max = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
  const double cutoff = rel_tol * out.sigma_max;
  int rank = 0;
  if (out.sigma_max > 0.0) {
    for (Eigen::Index k = 0; k < out.singular_values.size(); ++k) {
      if (out.singular_values(k) > cutoff) ++rank;
    }
  }
  out.rank = rank;
  const Eigen::Index cols = m.cols();
  out.basis = svd.matrixV().rightCols(cols - rank);
  return out;
}

RowCompressor::RowCompressor(int cols) : cols_(cols), r_(0, cols) {}

void RowCompressor::append(const RealMatrix& rows) {
  if (rows.cols() != cols_) {
    throw Error(ErrorKind::kDimensionMismatch, "row batch has the wrong column count");
  }
  if (rows.rows() == 0) return;
  RealMatrix stacked(r_.rows() + rows.rows(), cols_);
  stacked << r_, rows;
  r_ = upper_factor(stacked);
  rows_seen_ += rows.rows();
}

RealMatrix RowCompressor::factor() const { return r_; }

ComplexVector random_unit_vector(int n, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::kPreconditionViolated, "random_unit_vector needs n >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      v(i) = Complex(re, im);
    }
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

ComplexMatrix random_unitary(int n, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::kPreconditionViolated, "random_unitary needs n >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& packed = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const Complex r = packed(k, k);
    const double mod = std::abs(r);
    q.col(k) *= mod > 0.0 ? r / mod : Complex(1.0, 0.0);
  }
  return q;
}

ComplexMatrix random_hermitian(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  ComplexMatrix h = (g + g.adjoint()) / 2.0;
  return h;
}

void fix_phase(ComplexVector& v, double eps) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double mod = std::abs(v(k));
    if (mod > eps) {
      v *= std::conj(v(k)) / mod;
      v(k) = Complex(std::abs(v(k)), 0.0);
      return;
    }
  }
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix pauli_y() {
  ComplexMatrix s(2, 2);
  s << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return s;
}

int hermitian_param_count(int dim) { return dim * dim; }

int hermitian_offdiag_offset(int dim, int i, int j) {
  // Pairs (i, j), i < j, enumerated row by row.
  const int before = i * dim - i * (i + 1) / 2;
  return dim + 2 * (before + (j - i - 1));
}

RealVector hermitian_coords(const ComplexMatrix& a) {
  const int d = static_cast<int>(a.rows());
  RealVector c(hermitian_param_count(d));
  const double s2 = std::sqrt(2.0);
  for (int i = 0; i < d; ++i) c(i) = a(i, i).real();
  int k = d;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      c(k++) = s2 * a(i, j).real();
      c(k++) = s2 * a(i, j).imag();
    }
  }
  return c;
}

ComplexMatrix hermitian_from_coords(const RealVector& coords, int dim) {
  if (coords.size() != hermitian_param_count(dim)) {
    throw Error(ErrorKind::kDimensionMismatch, "coordinate count does not match dim^2");
  }
  ComplexMatrix a(dim, dim);
  const double inv = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) a(i, i) = Complex(coords(i), 0.0);
  int k = dim;
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const Complex z(coords(k) * inv, coords(k + 1) * inv);
      a(i, j) = z;
      a(j, i) = std::conj(z);
      k += 2;
    }
  }
  return a;
}

HermitianParamVector::HermitianParamVector(int dim, RealVector coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim < 1 || coords_.size() != hermitian_param_count(dim)) {
    throw Error(ErrorKind::kDimensionMismatch, "HermitianParamVector needs dim^2 coordinates");
  }
}

HermitianParamVector HermitianParamVector::from_matrix(const ComplexMatrix& a, double rel_tol) {
  require_hermitian(a, rel_tol);
  return HermitianParamVector(static_cast<int>(a.rows()), hermitian_coords(a));
}

ComplexMatrix HermitianParamVector::to_matrix() const { return hermitian_from_coords(coords_, dim_); }

}  // namespace conewitness
