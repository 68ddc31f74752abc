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

#include "conewitness/map_core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "conewitness/errors.hpp"

namespace conewitness {

LinearMatrixMap::LinearMatrixMap(int dim_in, int dim_out, ComplexMatrix choi, const Tolerances& tol)
    : dim_in_(dim_in), dim_out_(dim_out), choi_(std::move(choi)) {
  if (dim_in < 1 || dim_out < 1) {
    throw Error(ErrorKind::kDimensionMismatch, "map dimensions must be positive");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(dim_in) * dim_out;
  if (choi_.rows() != d || choi_.cols() != d) {
    throw Error(ErrorKind::kDimensionMismatch, "Choi matrix must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  require_hermitian(choi_, tol.hermitian);
}

LinearMatrixMap map_from_action(int dim_in, int dim_out, const MatrixAction& action, const Tolerances& tol) {
  const int d = dim_in * dim_out;
  ComplexMatrix w = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < dim_in; ++i) {
    for (int j = 0; j < dim_in; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(dim_in, dim_in);
      unit(i, j) = 1.0;
      const ComplexMatrix image = action(unit);
      if (image.rows() != dim_out || image.cols() != dim_out) {
        throw Error(ErrorKind::kDimensionMismatch, "action returned a matrix of the wrong size");
      }
      w.block(i * dim_out, j * dim_out, dim_out, dim_out) = image;
    }
  }
  return LinearMatrixMap(dim_in, dim_out, std::move(w), tol);
}

ComplexMatrix choi_of(const LinearMatrixMap& phi) { return phi.choi(); }

ComplexMatrix apply(const LinearMatrixMap& phi, const ComplexMatrix& x) {
  const int n = phi.dim_in();
  const int m = phi.dim_out();
  if (x.rows() != n || x.cols() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "apply: input must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  // Tr_in(W (X^T (x) I)) = sum_ij X_ij W[(i,.), (j,.)].
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  const ComplexMatrix& w = phi.choi();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (x(i, j) != Complex(0.0, 0.0)) out += x(i, j) * w.block(i * m, j * m, m, m);
    }
  }
  return out;
}

LinearMatrixMap map_from_choi(ComplexMatrix w, int n, int m, const Tolerances& tol) {
  return LinearMatrixMap(n, m, std::move(w), tol);
}

namespace {

void require_same_dims(const LinearMatrixMap& phi, const LinearMatrixMap& psi) {
  if (phi.dim_in() != psi.dim_in() || phi.dim_out() != psi.dim_out()) {
    throw Error(ErrorKind::kDimensionMismatch, "maps act between different algebras");
  }
}

}  // namespace

LinearMatrixMap add(const LinearMatrixMap& phi, const LinearMatrixMap& psi) {
  require_same_dims(phi, psi);
  return LinearMatrixMap(phi.dim_in(), phi.dim_out(), phi.choi() + psi.choi());
}

LinearMatrixMap subtract(const LinearMatrixMap& phi, const LinearMatrixMap& psi) {
  require_same_dims(phi, psi);
  return LinearMatrixMap(phi.dim_in(), phi.dim_out(), phi.choi() - psi.choi());
}

LinearMatrixMap scale(const LinearMatrixMap& phi, double lambda) {
  return LinearMatrixMap(phi.dim_in(), phi.dim_out(), lambda * phi.choi());
}

ComplexMatrix partial_transpose_first(const ComplexMatrix& w, int n, int m) {
  if (w.rows() != static_cast<Eigen::Index>(n) * m || w.cols() != w.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "partial_transpose_first: shape mismatch");
  }
  ComplexMatrix out(w.rows(), w.cols());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.block(i * m, j * m, m, m) = w.block(j * m, i * m, m, m);
    }
  }
  return out;
}

LinearMatrixMap compose_with_transpose(const LinearMatrixMap& phi) {
  return LinearMatrixMap(phi.dim_in(), phi.dim_out(),
                         partial_transpose_first(phi.choi(), phi.dim_in(), phi.dim_out()));
}

ComplexVector witness_vector(const ComplexVector& x, const ComplexVector& y) { return kron(x.conjugate().eval(), y); }

double witness_pairing(const ComplexMatrix& w, const ComplexVector& x, const ComplexVector& y, const Tolerances& tol) {
  if (w.rows() != x.size() * y.size() || w.cols() != w.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "witness_pairing: W must be nm x nm");
  }
  const ComplexVector v = witness_vector(x, y);
  const Complex value = v.dot(w * v);  // Eigen's dot conjugates the left operand
  if (std::abs(value.imag()) > tol.pairing_imag * std::max(1.0, w.norm()) * std::max(1.0, v.squaredNorm())) {
    throw Error(ErrorKind::kNonRealPairing, "imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

ComplexMatrix ray_representative(const ComplexMatrix& w, int n, int m) {
  const double trace = w.trace().real();
  const double norm = w.norm();
  if (norm == 0.0) return w;
  if (trace > 0.0) return w * (static_cast<double>(n) * m / trace);
  ComplexMatrix out = w / norm;
  const RealVector c = hermitian_coords(out);
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    if (std::abs(c(k)) > 1e-14) {
      if (c(k) < 0.0) out = -out;
      break;
    }
  }
  return out;
}

double ray_distance(const ComplexMatrix& w, const ComplexMatrix& v) {
  const double nw = w.norm();
  const double nv = v.norm();
  if (nw == 0.0 || nv == 0.0) return std::numeric_limits<double>::infinity();
  return (w / nw - v / nv).norm();
}

bool same_ray(const ComplexMatrix& w, const ComplexMatrix& v, const Tolerances& tol) {
  return ray_distance(w, v) <= tol.ray;
}

}  // namespace conewitness
