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

#include <cstdlib>
#include <cstring>

#include "conewitness/errors.hpp"
#include "variants.hpp"

namespace conewitness::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::kScalar, &detail::scalar_caxpy, &detail::scalar_cdotc};
  return table;
}

const KernelTable* avx2_table() {
#if defined(CONEWITNESS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable table{Isa::kAvx2, &detail::avx2_caxpy, &detail::avx2_cdotc};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const char* forced = std::getenv("CONEWITNESS_KERNELS");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return scalar_table();
  if (const KernelTable* t = avx2_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

void contract_first(const ComplexMatrix& w, const ComplexVector& x, int n, int m, ComplexMatrix& out,
                    const KernelTable& table) {
  const Eigen::Index d = static_cast<Eigen::Index>(n) * m;
  if (w.rows() != d || w.cols() != d || x.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "contract_first: shapes do not match");
  }
  // T = W (|x> (x) I_m), then M = (<x| (x) I_m) T.
  ComplexMatrix t = ComplexMatrix::Zero(d, m);
  for (int l = 0; l < m; ++l) {
    for (int j = 0; j < n; ++j) {
      table.caxpy(static_cast<std::size_t>(d), x(j), w.col(j * m + l).data(), t.col(l).data());
    }
  }
  out.setZero(m, m);
  for (int l = 0; l < m; ++l) {
    for (int i = 0; i < n; ++i) {
      table.caxpy(static_cast<std::size_t>(m), std::conj(x(i)), t.col(l).data() + i * m, out.col(l).data());
    }
  }
}

void contract_second(const ComplexMatrix& w, const ComplexVector& z, int n, int m, ComplexMatrix& out,
                     const KernelTable& table) {
  const Eigen::Index d = static_cast<Eigen::Index>(n) * m;
  if (w.rows() != d || w.cols() != d || z.size() != m) {
    throw Error(ErrorKind::kDimensionMismatch, "contract_second: shapes do not match");
  }
  // S = W (I_n (x) |z>), then N[i, j] = <z| S[i-th block, j].
  ComplexMatrix s = ComplexMatrix::Zero(d, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < m; ++l) {
      table.caxpy(static_cast<std::size_t>(d), z(l), w.col(j * m + l).data(), s.col(j).data());
    }
  }
  out.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      out(i, j) = table.cdotc(static_cast<std::size_t>(m), z.data(), s.col(j).data() + i * m);
    }
  }
}

double hermitian_form(const ComplexMatrix& w, const ComplexVector& v, const KernelTable& table) {
  if (w.rows() != v.size() || w.cols() != v.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "hermitian_form: shapes do not match");
  }
  const auto d = static_cast<std::size_t>(v.size());
  ComplexVector wv = ComplexVector::Zero(v.size());
  for (Eigen::Index l = 0; l < v.size(); ++l) {
    table.caxpy(d, v(l), w.col(l).data(), wv.data());
  }
  return table.cdotc(d, v.data(), wv.data()).real();
}

}  // namespace conewitness::kernels
