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

// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include "variants.hpp"

namespace conewitness::kernels::detail {

// One __m256d holds two interleaved complex doubles: [re0 im0 re1 im1].

void avx2_caxpy(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * k);
    const __m256d swapped = _mm256_permute_pd(xv, 0b0101);
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, swapped));
    _mm256_storeu_pd(ys + 2 * k, _mm256_add_pd(_mm256_loadu_pd(ys + 2 * k), prod));
  }
  if (k < n) scalar_caxpy(n - k, alpha, x + k, y + k);
}

Complex avx2_cdotc(std::size_t n, const Complex* x, const Complex* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  const double* ys = reinterpret_cast<const double*>(y);
  __m256d same = _mm256_setzero_pd();   // [xr*yr, xi*yi, ...]
  __m256d cross = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * k);
    const __m256d yv = _mm256_loadu_pd(ys + 2 * k);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(c, cross);
  Complex acc((s[0] + s[1]) + (s[2] + s[3]), (c[0] - c[1]) + (c[2] - c[3]));
  if (k < n) acc += scalar_cdotc(n - k, x + k, y + k);
  return acc;
}

}  // namespace conewitness::kernels::detail
