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

#include <immintrin.h>

#include <algorithm>

#include "qkdrep/kernels/kernels.hpp"

namespace qkdrep::kernels::avx2 {

namespace {

// Two complex doubles per 256-bit lane: [r0 i0 r1 i1].
inline __m256d cmul(__m256d ar, __m256d ai, __m256d b) {
    const __m256d bswap = _mm256_permute_pd(b, 0b0101);
    return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bswap));
}

inline cplx hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return {out[0], out[1]};
}

}  // namespace

void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
    std::fill(c, c + m * n, cplx{0.0, 0.0});
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = cd + 2 * i * n;
        std::size_t p = 0;
        // Two rows of B per pass halves the load/store traffic on C.
        for (; p + 1 < k; p += 2) {
            const cplx a0 = a[i * k + p];
            const cplx a1 = a[i * k + p + 1];
            const __m256d ar0 = _mm256_set1_pd(a0.real());
            const __m256d ai0 = _mm256_set1_pd(a0.imag());
            const __m256d ar1 = _mm256_set1_pd(a1.real());
            const __m256d ai1 = _mm256_set1_pd(a1.imag());
            const double* b0 = bd + 2 * p * n;
            const double* b1 = bd + 2 * (p + 1) * n;
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                __m256d cv = _mm256_loadu_pd(crow + 2 * j);
                cv = _mm256_add_pd(cv, cmul(ar0, ai0, _mm256_loadu_pd(b0 + 2 * j)));
                cv = _mm256_add_pd(cv, cmul(ar1, ai1, _mm256_loadu_pd(b1 + 2 * j)));
                _mm256_storeu_pd(crow + 2 * j, cv);
            }
            for (; j < n; ++j) {
                crow[2 * j] += a0.real() * b0[2 * j] - a0.imag() * b0[2 * j + 1] +
                               a1.real() * b1[2 * j] - a1.imag() * b1[2 * j + 1];
                crow[2 * j + 1] += a0.real() * b0[2 * j + 1] + a0.imag() * b0[2 * j] +
                                   a1.real() * b1[2 * j + 1] + a1.imag() * b1[2 * j];
            }
        }
        for (; p < k; ++p) {
            const cplx a0 = a[i * k + p];
            const __m256d ar0 = _mm256_set1_pd(a0.real());
            const __m256d ai0 = _mm256_set1_pd(a0.imag());
            const double* b0 = bd + 2 * p * n;
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                __m256d cv = _mm256_loadu_pd(crow + 2 * j);
                cv = _mm256_add_pd(cv, cmul(ar0, ai0, _mm256_loadu_pd(b0 + 2 * j)));
                _mm256_storeu_pd(crow + 2 * j, cv);
            }
            for (; j < n; ++j) {
                crow[2 * j] += a0.real() * b0[2 * j] - a0.imag() * b0[2 * j + 1];
                crow[2 * j + 1] += a0.real() * b0[2 * j + 1] + a0.imag() * b0[2 * j];
            }
        }
    }
}

cplx dotu(const cplx* x, const cplx* y, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc_re = _mm256_setzero_pd();  // holds xr*yr, xi*yr
    __m256d acc_im = _mm256_setzero_pd();  // holds xr*yi, xi*yi
    std::size_t i = 0;
    for (; i + 1 < n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        const __m256d yr = _mm256_movedup_pd(yv);         // [yr0 yr0 yr1 yr1]
        const __m256d yi = _mm256_permute_pd(yv, 0b1111);  // [yi0 yi0 yi1 yi1]
        acc_re = _mm256_fmadd_pd(xv, yr, acc_re);
        acc_im = _mm256_fmadd_pd(xv, yi, acc_im);
    }
    alignas(32) double re_parts[4];
    alignas(32) double im_parts[4];
    _mm256_store_pd(re_parts, acc_re);
    _mm256_store_pd(im_parts, acc_im);
    // (xr + i xi)(yr + i yi) = xr yr - xi yi + i (xr yi + xi yr)
    double re = re_parts[0] + re_parts[2] - im_parts[1] - im_parts[3];
    double im = re_parts[1] + re_parts[3] + im_parts[0] + im_parts[2];
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 1 < n; i += 2) {
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        yv = _mm256_add_pd(yv, cmul(ar, ai, _mm256_loadu_pd(xd + 2 * i)));
        _mm256_storeu_pd(yd + 2 * i, yv);
    }
    for (; i < n; ++i) {
        y[i] += alpha * x[i];
    }
}

}  // namespace qkdrep::kernels::avx2
