// Copyright 2026 The qkdrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex arithmetic used by the Fock-space engine. Every routine has a
// portable scalar reference in qkdrep::kernels::scalar and, on x86-64 builds,
// an AVX2/FMA variant in qkdrep::kernels::avx2. The public entry points route
// through a dispatch table chosen once at startup from CPUID.
//
// All matrices are row-major, contiguous, std::complex<double>.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qkdrep::kernels {

using cplx = std::complex<double>;

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

// Currently selected variant.
Isa active_isa();

// Overrides the runtime selection (tests, benchmarking). Throws
// std::invalid_argument when the variant is unavailable.
void force_isa(Isa isa);

// Restores the CPUID-based selection. QKDREP_FORCE_SCALAR=1 in the
// environment pins the scalar path.
void reset_isa();

// C = A * B, A is m x k, B is k x n, C is m x n. C is overwritten.
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c);

// sum_i x[i] * y[i] (no conjugation).
cplx dotu(std::span<const cplx> x, std::span<const cplx> y);

// y += alpha * x
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);

namespace scalar {
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c);
cplx dotu(const cplx* x, const cplx* y, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
}  // namespace scalar

#if defined(QKDREP_HAVE_AVX2)
namespace avx2 {
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c);
cplx dotu(const cplx* x, const cplx* y, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace qkdrep::kernels
