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

#include "variants.hpp"

namespace conewitness::kernels::detail {

void scalar_caxpy(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real();
    const double xi = x[k].imag();
    y[k] = Complex(y[k].real() + ar * xr - ai * xi, y[k].imag() + ar * xi + ai * xr);
  }
}

Complex scalar_cdotc(std::size_t n, const Complex* x, const Complex* y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real();
    const double xi = x[k].imag();
    const double yr = y[k].real();
    const double yi = y[k].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

}  // namespace conewitness::kernels::detail
