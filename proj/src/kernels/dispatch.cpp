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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qkdrep/kernels/kernels.hpp"

namespace qkdrep::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(QKDREP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect() {
    if (const char* env = std::getenv("QKDREP_FORCE_SCALAR"); env != nullptr && std::string(env) == "1") {
        return Isa::kScalar;
    }
    return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<Isa>& selected() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::kScalar:
            return "scalar";
        case Isa::kAvx2:
            return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    return isa == Isa::kScalar || (isa == Isa::kAvx2 && cpu_has_avx2());
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw std::invalid_argument("kernel variant '" + std::string(isa_name(isa)) + "' is not available");
    }
    selected().store(isa, std::memory_order_relaxed);
}

void reset_isa() { selected().store(detect(), std::memory_order_relaxed); }

void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
#if defined(QKDREP_HAVE_AVX2)
    if (active_isa() == Isa::kAvx2) {
        avx2::gemm(m, n, k, a, b, c);
        return;
    }
#endif
    scalar::gemm(m, n, k, a, b, c);
}

cplx dotu(std::span<const cplx> x, std::span<const cplx> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("dotu: length mismatch");
    }
#if defined(QKDREP_HAVE_AVX2)
    if (active_isa() == Isa::kAvx2) {
        return avx2::dotu(x.data(), y.data(), x.size());
    }
#endif
    return scalar::dotu(x.data(), y.data(), x.size());
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("axpy: length mismatch");
    }
#if defined(QKDREP_HAVE_AVX2)
    if (active_isa() == Isa::kAvx2) {
        avx2::axpy(alpha, x.data(), y.data(), x.size());
        return;
    }
#endif
    scalar::axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace qkdrep::kernels
