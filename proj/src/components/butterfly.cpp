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

#include "qkdrep/components/butterfly.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qkdrep {

namespace {

// Square roots of the pure-loss binomial weights: coeff[n][j] is the
// amplitude for losing j of n photons.
std::vector<std::vector<double>> loss_amplitudes(std::size_t dim, double eta) {
    std::vector<std::vector<double>> c(dim);
    for (std::size_t n = 0; n < dim; ++n) {
        c[n].resize(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            const int ni = static_cast<int>(n);
            const int ji = static_cast<int>(j);
            c[n][j] = std::sqrt(binomial(ni, ji) * std::pow(eta, ni - ji) * std::pow(1.0 - eta, ji));
        }
    }
    return c;
}

}  // namespace

MultimodeOperator butterfly_apply(const MultimodeOperator& state, std::string_view user_mode,
                                  std::string_view memory_mode, double eta_user, double eta_memory,
                                  std::string port0_label, std::string port1_label,
                                  BeamSplitterConvention convention) {
    MultimodeOperator out = apply_loss(state, user_mode, eta_user);
    out = apply_loss(out, memory_mode, eta_memory);
    out = apply_beam_splitter(out, user_mode, memory_mode, 0.5, convention);
    const std::string mem(memory_mode);
    out = rename_mode(out, user_mode, std::move(port1_label));
    return rename_mode(out, mem, std::move(port0_label));
}

ButterflyKernel::ButterflyKernel(std::size_t dim_user, std::size_t dim_memory, double eta_user, double eta_memory,
                                 double d_c, BeamSplitterConvention convention)
    : dim_user_(dim_user), dim_memory_(dim_memory) {
    if (dim_user == 0 || dim_memory == 0) {
        throw std::invalid_argument("butterfly kernel dimensions must be positive");
    }
    if (!(eta_user >= 0.0 && eta_user <= 1.0 && eta_memory >= 0.0 && eta_memory <= 1.0)) {
        throw std::invalid_argument("butterfly efficiencies must lie in [0, 1]");
    }
    if (!(d_c >= 0.0 && d_c <= 1.0)) {
        throw std::invalid_argument("dark-count probability must lie in [0, 1]");
    }
    const auto cu = loss_amplitudes(dim_user, eta_user);
    const auto cm = loss_amplitudes(dim_memory, eta_memory);

    // amp[x][y][p] = <p, x+y-p | U | x, y>, p photons on output a (x1).
    std::vector<std::vector<std::vector<double>>> amp(dim_user, std::vector<std::vector<double>>(dim_memory));
    for (std::size_t x = 0; x < dim_user; ++x) {
        for (std::size_t y = 0; y < dim_memory; ++y) {
            amp[x][y] = beam_splitter_column(static_cast<int>(x), static_cast<int>(y), 0.5, convention);
        }
    }

    const std::size_t du = dim_user;
    const std::size_t dm = dim_memory;
    for (std::size_t o = 0; o < 4; ++o) {
        kernels_[o] = Matrix(du * du, dm * dm);
        const auto outcome = static_cast<PairOutcome>(o);
        for (std::size_t i = 0; i < du; ++i) {
            for (std::size_t ip = 0; ip < du; ++ip) {
                for (std::size_t k = 0; k < dm; ++k) {
                    if (i + k < ip) {
                        continue;
                    }
                    const std::size_t kp = i + k - ip;
                    if (kp >= dm) {
                        continue;
                    }
                    double sum = 0.0;
                    for (std::size_t j = 0; j <= std::min(i, ip); ++j) {
                        const double lu = cu[i][j] * cu[ip][j];
                        for (std::size_t l = 0; l <= std::min(k, kp); ++l) {
                            const double lm = cm[k][l] * cm[kp][l];
                            const auto& ket = amp[i - j][k - l];
                            const auto& bra = amp[ip - j][kp - l];
                            const std::size_t total = i - j + k - l;
                            double s = 0.0;
                            for (std::size_t p = 0; p <= total; ++p) {
                                s += ket[p] * bra[p] * outcome_weight(outcome, total - p, p, d_c);
                            }
                            sum += lu * lm * s;
                        }
                    }
                    kernels_[o](i * du + ip, k * dm + kp) = sum;
                }
            }
        }
    }
}

cplx ButterflyKernel::expectation(PairOutcome outcome, const Matrix& user_op, const Matrix& memory_op) const {
    if (user_op.rows() != dim_user_ || memory_op.rows() != dim_memory_) {
        throw std::invalid_argument("operator dimensions do not match the butterfly kernel");
    }
    const Matrix& k = (*this)(outcome);
    cplx total = 0.0;
    for (std::size_t i = 0; i < dim_user_; ++i) {
        for (std::size_t ip = 0; ip < dim_user_; ++ip) {
            const cplx u = user_op(i, ip);
            if (u == cplx(0.0)) {
                continue;
            }
            for (std::size_t kk = 0; kk < dim_memory_; ++kk) {
                for (std::size_t kp = 0; kp < dim_memory_; ++kp) {
                    total += u * memory_op(kk, kp) * k(i * dim_user_ + ip, kk * dim_memory_ + kp);
                }
            }
        }
    }
    return total;
}

}  // namespace qkdrep
