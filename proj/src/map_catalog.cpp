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

#include "conewitness/map_catalog.hpp"

#include <cmath>
#include <string>

#include "conewitness/errors.hpp"

namespace conewitness {

AntisymmetricUnitary AntisymmetricUnitary::make(ComplexMatrix u, const Tolerances& tol) {
  if (u.rows() != u.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "U must be square");
  }
  if (u.rows() == 0 || u.rows() % 2 != 0) {
    throw Error(ErrorKind::kOddDimension, "antisymmetric unitaries exist only in even dimension, got " +
                                              std::to_string(u.rows()));
  }
  const double asym = (u + u.transpose()).norm();
  if (asym > tol.antisymmetric) {
    throw Error(ErrorKind::kNotAntisymmetric, "||U + U^T||_F = " + std::to_string(asym));
  }
  if (!is_unitary(u, tol.unitary)) {
    throw Error(ErrorKind::kNotUnitary, "||U^dagger U - I||_F exceeds tolerance");
  }
  return AntisymmetricUnitary(std::move(u));
}

std::string descriptor_name(const MapDescriptor& d) {
  struct Visitor {
    std::string operator()(const descriptor::Transposition&) const { return "transpose"; }
    std::string operator()(const descriptor::Ad&) const { return "ad"; }
    std::string operator()(const descriptor::CoAd&) const { return "co-ad"; }
    std::string operator()(const descriptor::Reduction&) const { return "reduction"; }
    std::string operator()(const descriptor::ChoiFamily&) const { return "choi-family"; }
    std::string operator()(const descriptor::BreuerHall&) const { return "breuer-hall"; }
    std::string operator()(const descriptor::Robertson&) const { return "robertson"; }
    std::string operator()(const descriptor::FromChoi&) const { return "from-choi"; }
  };
  return std::visit(Visitor{}, d);
}

LinearMatrixMap build_map(const MapDescriptor& d, const Tolerances& tol) {
  struct Visitor {
    const Tolerances& tol;
    LinearMatrixMap operator()(const descriptor::Transposition& t) const { return transposition(t.n); }
    LinearMatrixMap operator()(const descriptor::Ad& a) const { return ad_map(a.v); }
    LinearMatrixMap operator()(const descriptor::CoAd& a) const { return co_ad_map(a.v); }
    LinearMatrixMap operator()(const descriptor::Reduction& r) const { return reduction(r.n); }
    LinearMatrixMap operator()(const descriptor::ChoiFamily& c) const { return choi_family(c.params); }
    LinearMatrixMap operator()(const descriptor::BreuerHall& b) const { return breuer_hall(b.u); }
    LinearMatrixMap operator()(const descriptor::Robertson&) const { return robertson(); }
    LinearMatrixMap operator()(const descriptor::FromChoi& f) const { return map_from_choi(f.w, f.n, f.m, tol); }
  };
  return std::visit(Visitor{tol}, d);
}

LinearMatrixMap transposition(int n) {
  if (n < 1) throw Error(ErrorKind::kPreconditionViolated, "transposition needs n >= 1");
  return map_from_action(n, n, [](const ComplexMatrix& x) -> ComplexMatrix { return x.transpose(); });
}

LinearMatrixMap ad_map(const ComplexMatrix& v) {
  const int m = static_cast<int>(v.rows());
  const int n = static_cast<int>(v.cols());
  if (m < 1 || n < 1) throw Error(ErrorKind::kPreconditionViolated, "V must be nonempty");
  // Choi = |w><w| with w = sum_i e_i (x) V e_i.
  ComplexVector w(static_cast<Eigen::Index>(n) * m);
  for (int i = 0; i < n; ++i) w.segment(i * m, m) = v.col(i);
  ComplexMatrix choi = w * w.adjoint();
  return LinearMatrixMap(n, m, std::move(choi));
}

LinearMatrixMap co_ad_map(const ComplexMatrix& v) {
  const int m = static_cast<int>(v.rows());
  const int n = static_cast<int>(v.cols());
  if (m < 1 || n < 1) throw Error(ErrorKind::kPreconditionViolated, "V must be nonempty");
  return map_from_action(n, m, [&v](const ComplexMatrix& x) -> ComplexMatrix {
    return v * x.transpose() * v.adjoint();
  });
}

LinearMatrixMap reduction(int n) {
  if (n < 2) throw Error(ErrorKind::kPreconditionViolated, "reduction map needs n >= 2");
  return map_from_action(n, n, [n](const ComplexMatrix& x) -> ComplexMatrix {
    return ComplexMatrix::Identity(n, n) * x.trace() - x;
  });
}

LinearMatrixMap choi_family(const ChoiFamilyParams& p) {
  if (!(p.a >= 0.0 && p.b >= 0.0 && p.c >= 0.0)) {
    throw Error(ErrorKind::kNegativeParameter, "phi[a,b,c] needs a, b, c >= 0");
  }
  // Row r of the diagonal weights: output (r, r) = sum_k weight[r][k] x_kk.
  const double weight[3][3] = {{p.a, p.b, p.c}, {p.c, p.a, p.b}, {p.b, p.c, p.a}};
  return map_from_action(3, 3, [&weight](const ComplexMatrix& x) -> ComplexMatrix {
    ComplexMatrix out = -x;
    for (int r = 0; r < 3; ++r) {
      Complex diag = 0.0;
      for (int k = 0; k < 3; ++k) diag += weight[r][k] * x(k, k);
      out(r, r) = diag;
    }
    return out;
  });
}

bool choi_family_is_positive(const ChoiFamilyParams& p) {
  const bool cond1 = p.a >= 0.0 && p.a < 2.0;
  const bool cond2 = p.a + p.b + p.c >= 2.0;
  const bool cond3 = p.a > 1.0 || p.b * p.c >= (1.0 - p.a) * (1.0 - p.a);
  return cond1 && cond2 && cond3;
}

bool choi_family_is_completely_positive(const ChoiFamilyParams& p) {
  return p.a >= 2.0 && p.b >= 0.0 && p.c >= 0.0;
}

bool choi_family_is_indecomposable(const ChoiFamilyParams& p) {
  if (!choi_family_is_positive(p)) {
    throw Error(ErrorKind::kNotPositiveMap, "indecomposability is only defined for positive phi[a,b,c]");
  }
  return p.b * p.c < (2.0 - p.a) * (2.0 - p.a) / 4.0;
}

LinearMatrixMap breuer_hall(const AntisymmetricUnitary& u) {
  const int d = u.dim();
  const ComplexMatrix& um = u.matrix();
  return map_from_action(d, d, [d, &um](const ComplexMatrix& x) -> ComplexMatrix {
    return ComplexMatrix::Identity(d, d) * x.trace() - x - um * x.transpose() * um.adjoint();
  });
}

LinearMatrixMap robertson() {
  const auto r2 = [](const ComplexMatrix& x) -> ComplexMatrix {
    return ComplexMatrix::Identity(2, 2) * x.trace() - x;
  };
  return map_from_action(4, 4, [&r2](const ComplexMatrix& x) -> ComplexMatrix {
    const ComplexMatrix x11 = x.block(0, 0, 2, 2);
    const ComplexMatrix x12 = x.block(0, 2, 2, 2);
    const ComplexMatrix x21 = x.block(2, 0, 2, 2);
    const ComplexMatrix x22 = x.block(2, 2, 2, 2);
    ComplexMatrix out(4, 4);
    out.block(0, 0, 2, 2) = ComplexMatrix::Identity(2, 2) * x22.trace();
    out.block(0, 2, 2, 2) = -(x12 + r2(x21));
    out.block(2, 0, 2, 2) = -(x21 + r2(x12));
    out.block(2, 2, 2, 2) = ComplexMatrix::Identity(2, 2) * x11.trace();
    return out;
  });
}

AntisymmetricUnitary robertson_unitary() {
  return AntisymmetricUnitary::make(kron(ComplexMatrix::Identity(2, 2).eval(), pauli_y()));
}

std::vector<ComplexMatrix> antisym_basis(const ComplexMatrix& v, int dim, const Tolerances& tol) {
  if (v.rows() != dim || v.cols() != dim) {
    throw Error(ErrorKind::kDimensionMismatch, "V must be dim x dim");
  }
  if (!is_unitary(v, tol.unitary)) throw Error(ErrorKind::kNotUnitary, "V is not unitary");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(dim) * (dim - 1) / 2);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      // V (e_ij - e_ji) V^T = v_i v_j^T - v_j v_i^T
      out.push_back(v.col(i) * v.col(j).transpose() - v.col(j) * v.col(i).transpose());
    }
  }
  return out;
}

AntisymmetricUnitary random_antisymmetric_unitary(int dim, Rng& rng) {
  if (dim < 2 || dim % 2 != 0) {
    throw Error(ErrorKind::kOddDimension, "antisymmetric unitaries need an even dimension, got " + std::to_string(dim));
  }
  const ComplexMatrix v = random_unitary(dim, rng);
  const ComplexMatrix j = kron(ComplexMatrix::Identity(dim / 2, dim / 2).eval(), pauli_y());
  return AntisymmetricUnitary::make(v * j * v.transpose());
}

}  // namespace conewitness
