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

#include "conewitness/kernels.hpp"

namespace conewitness::kernels::detail {

void scalar_caxpy(std::size_t n, Complex alpha, const Complex* x, Complex* y);
Complex scalar_cdotc(std::size_t n, const Complex* x, const Complex* y);

#if defined(CONEWITNESS_HAVE_AVX2)
void avx2_caxpy(std::size_t n, Complex alpha, const Complex* x, Complex* y);
Complex avx2_cdotc(std::size_t n, const Complex* x, const Complex* y);
#endif

}  // namespace conewitness::kernels::detail
