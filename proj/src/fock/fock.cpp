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

#include "qkdrep/fock/fock.hpp"

#include <array>
#include <cmath>
#include <string>

namespace qkdrep {

namespace {

void require_probability(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(v));
    }
}

}  // namespace

FockCutoff::FockCutoff(int n_max) : n_max_(n_max) {
    if (n_max < 2) {
        throw std::invalid_argument("Fock cutoff n_max must be at least 2, got " + std::to_string(n_max));
    }
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    static const auto table = [] {
        std::array<std::array<double, 128>, 128> t{};
        for (int a = 0; a < 128; ++a) {
            t[a][0] = 1.0;
            for (int b = 1; b <= a; ++b) {
                t[a][b] = t[a - 1][b - 1] + (b < a ? t[a - 1][b] : 0.0);
            }
        }
        return t;
    }();
    if (n < 128) {
        return table[n][k];
    }
    return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

SingleModeOperator number_state(int n, FockCutoff cutoff) {
    if (n < 0 || n > cutoff.n_max()) {
        throw TruncationError("number state |" + std::to_string(n) + "> exceeds cutoff n_max=" +
                              std::to_string(cutoff.n_max()));
    }
    const auto idx = static_cast<std::size_t>(n);
    return Matrix::unit(cutoff.dim(), idx, idx);
}

double poisson_tail(double mean, int n_max) {
    if (mean <= 0.0) {
        return 0.0;
    }
    // Sum the tail directly so tiny masses are not lost to cancellation.
    double term = std::exp(-mean + (n_max + 1) * std::log(mean) - log_factorial(n_max + 1));
    double sum = 0.0;
    for (int n = n_max + 1; n < n_max + 2000; ++n) {
        sum += term;
        term *= mean / (n + 1);
        if (term < 1e-300 || term < sum * 1e-17) {
            break;
        }
    }
    return sum;
}

FockCutoff cutoff_for_mean(double mean, double tolerance) {
    int n = 2;
    while (poisson_tail(mean, n) >= tolerance) {
        ++n;
        if (n > 400) {
            throw TruncationError("no cutoff below 400 photons meets the leakage tolerance");
        }
    }
    return FockCutoff(n);
}

std::vector<cplx> coherent_amplitudes(cplx alpha, FockCutoff cutoff, double tolerance) {
    const double mean = std::norm(alpha);
    const double leak = poisson_tail(mean, cutoff.n_max());
    if (leak > tolerance) {
        throw TruncationError("coherent state with mean photon number " + std::to_string(mean) +
                              " leaks " + std::to_string(leak) + " beyond n_max=" +
                              std::to_string(cutoff.n_max()));
    }
    std::vector<cplx> amp(cutoff.dim());
    double norm = 0.0;
    for (std::size_t n = 0; n < amp.size(); ++n) {
        const int ni = static_cast<int>(n);
        if (n == 0) {
            amp[n] = std::exp(-0.5 * mean);
        } else if (mean == 0.0) {
            amp[n] = 0.0;
        } else {
            const double mag = std::exp(-0.5 * mean + 0.5 * ni * std::log(mean) - 0.5 * log_factorial(ni));
            amp[n] = std::polar(mag, ni * std::arg(alpha));
        }
        norm += std::norm(amp[n]);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (cplx& a : amp) {
        a *= scale;
    }
    return amp;
}

SingleModeOperator coherent_state(cplx alpha, FockCutoff cutoff, double tolerance) {
    const auto amp = coherent_amplitudes(alpha, cutoff, tolerance);
    return Matrix::outer(amp, amp);
}

double mean_photon_number(const SingleModeOperator& rho) {
    double n = 0.0;
    for (std::size_t i = 0; i < rho.rows(); ++i) {
        n += static_cast<double>(i) * rho(i, i).real();
    }
    return n;
}

Matrix phase_shift(std::size_t dim, double phi) {
    Matrix m(dim, dim);
    for (std::size_t n = 0; n < dim; ++n) {
        m(n, n) = std::polar(1.0, phi * static_cast<double>(n));
    }
    return m;
}

std::vector<double> beam_splitter_column(int i, int k, double transmissivity, BeamSplitterConvention convention) {
    require_probability(transmissivity, "beam-splitter transmissivity");
    const double st = std::sqrt(transmissivity);
    const double sr = std::sqrt(1.0 - transmissivity);
    const double sign = convention == BeamSplitterConvention::kStandard ? 1.0 : -1.0;
    const int total = i + k;
    std::vector<double> out(static_cast<std::size_t>(total) + 1, 0.0);
    // a+^i b+^k with a+ -> st a+ + sign sr b+, b+ -> st b+ - sign sr a+;
    // j of the a+ factors stay in a, m of the b+ factors move to a.
    for (int p = 0; p <= total; ++p) {
        const int q = total - p;
        double s = 0.0;
        for (int j = 0; j <= i; ++j) {
            const int m = p - j;
            if (m < 0 || m > k) {
                continue;
            }
            s += binomial(i, j) * binomial(k, m) * std::pow(st, j) * std::pow(sign * sr, i - j) *
                 std::pow(st, k - m) * std::pow(-sign * sr, m);
        }
        const double norm = std::exp(0.5 * (log_factorial(p) + log_factorial(q) - log_factorial(i) - log_factorial(k)));
        out[static_cast<std::size_t>(p)] = s * norm;
    }
    return out;
}

Matrix beam_splitter_isometry(std::size_t dim_a, std::size_t dim_b, double transmissivity,
                              BeamSplitterConvention convention) {
    const std::size_t out_dim = dim_a + dim_b - 1;
    Matrix u(out_dim * out_dim, dim_a * dim_b);
    for (std::size_t i = 0; i < dim_a; ++i) {
        for (std::size_t k = 0; k < dim_b; ++k) {
            const auto col = beam_splitter_column(static_cast<int>(i), static_cast<int>(k), transmissivity, convention);
            const std::size_t total = i + k;
            for (std::size_t p = 0; p <= total; ++p) {
                u(p * out_dim + (total - p), i * dim_b + k) = col[p];
            }
        }
    }
    return u;
}

std::vector<Matrix> loss_kraus(std::size_t dim, double eta) {
    require_probability(eta, "loss transmission");
    std::vector<Matrix> ops;
    ops.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        Matrix e(dim, dim);
        for (std::size_t n = k; n < dim; ++n) {
            const int ni = static_cast<int>(n);
            const int ki = static_cast<int>(k);
            e(n - k, n) = std::sqrt(binomial(ni, ki) * std::pow(eta, ni - ki) * std::pow(1.0 - eta, ki));
        }
        ops.push_back(std::move(e));
    }
    return ops;
}

SingleModeOperator apply_loss(const SingleModeOperator& rho, double eta) {
    require_probability(eta, "loss transmission");
    const std::size_t d = rho.rows();
    // Element-wise form of sum_k E_k rho E_k^+ : |n><m| feeds |n-k><m-k|.
    Matrix out(d, d);
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = 0; m < d; ++m) {
            const cplx v = rho(n, m);
            if (v == cplx{0.0, 0.0}) {
                continue;
            }
            const int ni = static_cast<int>(n);
            const int mi = static_cast<int>(m);
            for (int k = 0; k <= std::min(ni, mi); ++k) {
                const double c = std::sqrt(binomial(ni, k) * binomial(mi, k) * std::pow(eta, ni - k) *
                                           std::pow(eta, mi - k)) *
                                 std::pow(1.0 - eta, k);
                out(n - static_cast<std::size_t>(k), m - static_cast<std::size_t>(k)) += c * v;
            }
        }
    }
    return out;
}

}  // namespace qkdrep
