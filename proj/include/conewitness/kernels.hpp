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

// Complex inner-loop kernels behind the product-vector contractions.
//
// Every kernel exists as a portable scalar reference and, on x86-64 builds, an
// AVX2/FMA variant. The variant is chosen once at startup from CPUID; the
// CONEWITNESS_KERNELS environment variable ("scalar" or "avx2") overrides the
// choice. Both variants are tested against each other.

#include <cstddef>
#include <string_view>

#include "conewitness/linalg.hpp"

namespace conewitness::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  /// y[k] += alpha * x[k]
  void (*caxpy)(std::size_t n, Complex alpha, const Complex* x, Complex* y);
  /// sum_k conj(x[k]) * y[k]
  Complex (*cdotc)(std::size_t n, const Complex* x, const Complex* y);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

/// The table selected for this process.
const KernelTable& active();

/// M_x = (<x| (x) I_m) W (|x> (x) I_m), an m x m matrix, for W of size nm x nm.
void contract_first(const ComplexMatrix& w, const ComplexVector& x, int n, int m, ComplexMatrix& out,
                    const KernelTable& table = active());

/// N_z = (I_n (x) <z|) W (I_n (x) |z>), an n x n matrix.
void contract_second(const ComplexMatrix& w, const ComplexVector& z, int n, int m, ComplexMatrix& out,
                     const KernelTable& table = active());

/// Re <v|W|v>.
double hermitian_form(const ComplexMatrix& w, const ComplexVector& v, const KernelTable& table = active());

}  // namespace conewitness::kernels
