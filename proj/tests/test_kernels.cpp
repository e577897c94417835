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

#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "qkdrep/fock/matrix.hpp"
#include "qkdrep/kernels/kernels.hpp"

using qkdrep::cplx;
namespace kernels = qkdrep::kernels;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    for (cplx& x : v) {
        x = {g(rng), g(rng)};
    }
    return v;
}

double max_rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
    }
    return worst;
}

// Restores the runtime selection when a test exits.
struct IsaGuard {
    ~IsaGuard() { kernels::reset_isa(); }
};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar variant is always available") {
    CHECK(kernels::isa_available(kernels::Isa::kScalar));
    IsaGuard guard;
    kernels::force_isa(kernels::Isa::kScalar);
    CHECK(kernels::active_isa() == kernels::Isa::kScalar);
}

TEST_CASE("scalar gemm matches a naive triple loop") {
    std::mt19937_64 rng(7);
    const std::size_t m = 5, n = 7, k = 3;
    const auto a = random_vector(m * k, rng);
    const auto b = random_vector(k * n, rng);
    std::vector<cplx> c(m * n, cplx{99.0, 0.0});
    kernels::scalar::gemm(m, n, k, a.data(), b.data(), c.data());
    std::vector<cplx> ref(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t l = 0; l < k; ++l) {
                ref[i * n + j] += a[i * k + l] * b[l * n + j];
            }
        }
    }
    CHECK(max_rel_diff(ref, c) < 1e-14);
}

#if defined(QKDREP_HAVE_AVX2)
TEST_CASE("AVX2 kernels agree with the scalar kernels") {
    if (!kernels::isa_available(kernels::Isa::kAvx2)) {
        MESSAGE("AVX2 not supported by this CPU; equivalence check skipped");
        return;
    }
    std::mt19937_64 rng(11);
    // Odd sizes exercise the vector tails.
    for (std::size_t m : {1u, 2u, 3u, 8u, 17u}) {
        for (std::size_t n : {1u, 3u, 4u, 9u, 33u}) {
            for (std::size_t k : {1u, 2u, 5u, 16u}) {
                const auto a = random_vector(m * k, rng);
                const auto b = random_vector(k * n, rng);
                std::vector<cplx> cs(m * n), cv(m * n);
                kernels::scalar::gemm(m, n, k, a.data(), b.data(), cs.data());
                kernels::avx2::gemm(m, n, k, a.data(), b.data(), cv.data());
                CHECK(max_rel_diff(cs, cv) < 1e-13);
            }
        }
    }
    for (std::size_t len : {0u, 1u, 2u, 3u, 7u, 64u, 1001u}) {
        const auto x = random_vector(len, rng);
        const auto y = random_vector(len, rng);
        const cplx ds = kernels::scalar::dotu(x.data(), y.data(), len);
        const cplx dv = kernels::avx2::dotu(x.data(), y.data(), len);
        CHECK(std::abs(ds - dv) <= 1e-12 * std::max(1.0, std::abs(ds)));
        std::vector<cplx> ys = y, yv = y;
        const cplx alpha{0.3, -1.7};
        kernels::scalar::axpy(alpha, x.data(), ys.data(), len);
        kernels::avx2::axpy(alpha, x.data(), yv.data(), len);
        CHECK(max_rel_diff(ys, yv) < 1e-14);
    }
}

TEST_CASE("dispatched matrix products are ISA independent") {
    if (!kernels::isa_available(kernels::Isa::kAvx2)) {
        return;
    }
    IsaGuard guard;
    std::mt19937_64 rng(3);
    qkdrep::Matrix a(13, 6), b(6, 11);
    for (cplx& v : a.data()) {
        v = random_vector(1, rng)[0];
    }
    for (cplx& v : b.data()) {
        v = random_vector(1, rng)[0];
    }
    kernels::force_isa(kernels::Isa::kScalar);
    const qkdrep::Matrix s = a * b;
    kernels::force_isa(kernels::Isa::kAvx2);
    const qkdrep::Matrix v = a * b;
    CHECK(qkdrep::max_abs_diff(s, v) < 1e-13);
}
#endif

TEST_CASE("forcing an unavailable variant throws") {
    if (kernels::isa_available(kernels::Isa::kAvx2)) {
        return;
    }
    CHECK_THROWS_AS(kernels::force_isa(kernels::Isa::kAvx2), std::invalid_argument);
}

}  // TEST_SUITE
