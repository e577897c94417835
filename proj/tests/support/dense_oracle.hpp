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

// Independent dense reference for two-mode linear optics. The beam splitter is
// built as the matrix exponential of its generator rather than from
// closed-form amplitudes, and loss as a beam splitter with an environment
// mode traced out. Plain nested loops only; no library kernels.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

struct Dense {
    std::size_t n = 0;
    std::vector<cplx> a;  // row-major n x n

    explicit Dense(std::size_t size = 0) : n(size), a(size * size) {}
    cplx& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    cplx operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

inline Dense mul(const Dense& x, const Dense& y) {
    Dense z(x.n);
    for (std::size_t i = 0; i < x.n; ++i) {
        for (std::size_t k = 0; k < x.n; ++k) {
            const cplx xik = x(i, k);
            for (std::size_t j = 0; j < x.n; ++j) {
                z(i, j) += xik * y(k, j);
            }
        }
    }
    return z;
}

inline Dense adjoint(const Dense& x) {
    Dense z(x.n);
    for (std::size_t i = 0; i < x.n; ++i) {
        for (std::size_t j = 0; j < x.n; ++j) {
            z(i, j) = std::conj(x(j, i));
        }
    }
    return z;
}

// exp(g) by scaling and squaring with a Taylor series.
inline Dense expm(Dense g) {
    double norm = 0.0;
    for (const cplx& v : g.a) {
        norm = std::max(norm, std::abs(v));
    }
    int squarings = 0;
    while (norm * static_cast<double>(g.n) > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);
    for (cplx& v : g.a) {
        v *= scale;
    }
    Dense result(g.n);
    Dense term(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        result(i, i) = 1.0;
        term(i, i) = 1.0;
    }
    for (int k = 1; k <= 30; ++k) {
        term = mul(term, g);
        for (cplx& v : term.a) {
            v /= static_cast<double>(k);
        }
        for (std::size_t i = 0; i < result.a.size(); ++i) {
            result.a[i] += term.a[i];
        }
    }
    for (int s = 0; s < squarings; ++s) {
        result = mul(result, result);
    }
    return result;
}

// Beam splitter on two modes of dimension d each (index a*d + b), with
//   a+ -> sqrt(t) a+ + sqrt(1-t) b+,   b+ -> sqrt(t) b+ - sqrt(1-t) a+.
// Generated by exp(theta (a b+ - a+ b)) with cos(theta) = sqrt(t). Exact on
// states whose total photon number is below d.
inline Dense beam_splitter(std::size_t d, double t) {
    const double theta = std::acos(std::sqrt(t));
    Dense g(d * d);
    for (std::size_t na = 0; na < d; ++na) {
        for (std::size_t nb = 0; nb < d; ++nb) {
            const std::size_t col = na * d + nb;
            // a b+ |na, nb> = sqrt(na (nb+1)) |na-1, nb+1>
            if (na > 0 && nb + 1 < d) {
                g((na - 1) * d + nb + 1, col) += theta * std::sqrt(double(na) * double(nb + 1));
            }
            // -a+ b |na, nb> = -sqrt((na+1) nb) |na+1, nb-1>
            if (nb > 0 && na + 1 < d) {
                g((na + 1) * d + nb - 1, col) -= theta * std::sqrt(double(na + 1) * double(nb));
            }
        }
    }
    return expm(g);
}

inline Dense conjugate(const Dense& u, const Dense& rho) { return mul(mul(u, rho), adjoint(u)); }

// Embeds a (da*db) two-mode operator into the (d*d) space, d >= max(da, db).
inline Dense embed(const std::vector<cplx>& op, std::size_t da, std::size_t db, std::size_t d) {
    Dense out(d * d);
    const std::size_t n = da * db;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            out((r / db) * d + r % db, (c / db) * d + c % db) = op[r * n + c];
        }
    }
    return out;
}

// Pure loss on a single mode: mix with vacuum at transmissivity eta and trace
// the environment out.
inline Dense loss(const Dense& rho, double eta) {
    const std::size_t d = rho.n;
    Dense joint(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            joint(r * d, c * d) = rho(r, c);
        }
    }
    const Dense out = conjugate(beam_splitter(d, eta), joint);
    Dense reduced(d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            for (std::size_t e = 0; e < d; ++e) {
                reduced(r, c) += out(r * d + e, c * d + e);
            }
        }
    }
    return reduced;
}

// Probability that a threshold detector with dark-count probability dc
// clicks on port 0 only / port 1 only, for a two-mode state (index a*d + b).
inline double click_only(const Dense& rho, std::size_t d, int port, double dc) {
    double p = 0.0;
    for (std::size_t na = 0; na < d; ++na) {
        for (std::size_t nb = 0; nb < d; ++nb) {
            const double pop = rho(na * d + nb, na * d + nb).real();
            const double c0 = na > 0 ? 1.0 : dc;
            const double c1 = nb > 0 ? 1.0 : dc;
            p += pop * (port == 0 ? c0 * (1.0 - c1) : c1 * (1.0 - c0));
        }
    }
    return p;
}

}  // namespace oracle
