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

#include "qkdrep/encoder/encoder.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qkdrep/components/sources.hpp"

namespace qkdrep {

namespace {

void require_bit(int bit) {
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("bit must be 0 or 1, got " + std::to_string(bit));
    }
}

MultimodeOperator product(const std::string& a, Matrix fa, const std::string& b, Matrix fb, cplx weight = 1.0) {
    std::vector<Term> terms(1);
    terms[0].weight = weight;
    terms[0].factors.push_back(std::move(fa));
    terms[0].factors.push_back(std::move(fb));
    return MultimodeOperator({a, b}, std::move(terms));
}

}  // namespace

const char* basis_name(Basis basis) { return basis == Basis::kZ ? "z" : "x"; }

SourceSpec source_spec(SourceKind kind, const SystemParams& params, bool use_nu) {
    SourceSpec s;
    s.kind = kind;
    s.mean = use_nu ? params.nu : params.mu;
    s.p = kind == SourceKind::kSps ? params.p : 0.0;
    return s;
}

FockCutoff rail_cutoff(const SourceSpec& source, const SystemParams& params) {
    if (source.kind == SourceKind::kCoherent) {
        return cutoff_for_mean(source.mean, params.leakage_tolerance);
    }
    return FockCutoff(params.sps_cutoff);
}

MultimodeOperator encode_user(Basis basis, int bit, const SourceSpec& source, const SystemParams& params,
                              const std::string& rail0, const std::string& rail1) {
    require_bit(bit);
    const FockCutoff cut = rail_cutoff(source, params);
    const std::size_t d = cut.dim();
    const Matrix vacuum = Matrix::unit(d, 0, 0);

    if (source.kind != SourceKind::kCoherent) {
        const Matrix src = sps_source_state(source.kind == SourceKind::kSps ? source.p : 0.0, cut);
        if (basis == Basis::kZ) {
            return bit == 0 ? product(rail0, src, rail1, vacuum) : product(rail0, vacuum, rail1, src);
        }
        // 50:50 split of the source onto both rails, then the phase on rail 1.
        MultimodeOperator st = product(rail0, src, rail1, Matrix::unit(1, 0, 0));
        st = apply_beam_splitter(st, rail0, rail1, 0.5);
        return apply_local_unitary(st, rail1, phase_shift(d, std::numbers::pi * bit));
    }

    // Phase-randomized coherent source: a K-point phase mixture of product
    // coherent states.
    const double amp = std::sqrt(source.mean);
    const int k_total = params.phase_samples;
    std::vector<Term> terms;
    terms.reserve(static_cast<std::size_t>(k_total));
    for (int k = 0; k < k_total; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / k_total;
        Term t;
        t.weight = 1.0 / k_total;
        if (basis == Basis::kZ) {
            const Matrix coh = coherent_state(std::polar(amp, theta), cut, params.leakage_tolerance);
            t.factors = bit == 0 ? std::vector<Matrix>{coh, vacuum} : std::vector<Matrix>{vacuum, coh};
        } else {
            const double half = amp / std::sqrt(2.0);
            t.factors.push_back(coherent_state(std::polar(half, theta), cut, params.leakage_tolerance));
            t.factors.push_back(
                coherent_state(std::polar(half, theta + std::numbers::pi * bit), cut, params.leakage_tolerance));
        }
        terms.push_back(std::move(t));
    }
    MultimodeOperator st({rail0, rail1}, std::move(terms));
    return st.compress();
}

EncodedState encode(Basis basis, int m, int n, SourceKind kind, const SystemParams& params) {
    EncodedState e;
    e.basis = basis;
    e.m = m;
    e.n = n;
    e.source_kind = kind;
    e.state = tensor(encode_user(basis, m, source_spec(kind, params, false), params, "r", "s"),
                     encode_user(basis, n, source_spec(kind, params, true), params, "u", "v"));
    return e;
}

}  // namespace qkdrep
