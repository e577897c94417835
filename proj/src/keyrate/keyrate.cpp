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

#include "qkdrep/keyrate/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qkdrep {

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("binary entropy argument must lie in [0, 1]");
    }
    if (x == 0.0 || x == 1.0) {
        return 0.0;
    }
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

const char* regime_name(Regime regime) {
    return regime == Regime::kSourceLimited ? "source_limited" : "repeater_limited";
}

SinglePhotonStats single_photon_stats(const SystemParams& params, const LinkState& link) {
    const SourceSpec one{SourceKind::kSingle, 0.0, 0.0};
    return {gamma_table(params, Basis::kZ, one, one, link, link), gamma_table(params, Basis::kX, one, one, link, link)};
}

GammaTable source_gamma_z(const SystemParams& params, SourceKind kind, const LinkState& link) {
    const SourceSpec alice = source_spec(kind, params, false);
    const SourceSpec bob = source_spec(kind, params, true);
    GammaTable g = gamma_table(params, Basis::kZ, alice, bob, link, link);
    if (kind == SourceKind::kSps && params.neglect_double_emission && params.p > 0.0) {
        // Gamma is bilinear in the two users' states, so the both-emit-two
        // contribution is p^2 times the table of two-photon sources.
        const SourceSpec two{SourceKind::kSps, 0.0, 1.0};
        const GammaTable g22 = gamma_table(params, Basis::kZ, two, two, link, link);
        const double w = params.p * params.p;
        g.gamma -= w * g22.gamma;
        g.gamma_c -= w * g22.gamma_c;
        g.gamma_e -= w * g22.gamma_e;
    }
    return g;
}

KeyRateReport assemble_key_rate(const SystemParams& params, SourceKind kind, const LinkState& link,
                                const SinglePhotonStats& single, const GammaTable& source_z) {
    KeyRateReport r;
    r.source = kind;
    r.params = params;
    r.n = link.nesting_level;
    r.L_rep = link.span;
    r.eta_sps = link.eta_sps;
    r.chain = link.chain;

    r.Y11z = single.z.gamma;
    r.e11z = single.z.qber();
    r.e11x = single.x.qber();
    switch (kind) {
        case SourceKind::kSingle:
            r.Q11z = r.Y11z;
            break;
        case SourceKind::kSps:
            r.Q11z = (1.0 - params.p) * (1.0 - params.p) * r.Y11z;
            break;
        case SourceKind::kCoherent:
            r.Q11z = params.mu * params.nu * std::exp(-params.mu - params.nu) * r.Y11z;
            break;
    }
    r.Qz = source_z.gamma;
    r.Ez = source_z.qber();

    const double e11x = std::clamp(r.e11x, 0.0, 1.0);
    const double ez = std::clamp(r.Ez, 0.0, 1.0);
    r.bracket_raw = r.Q11z * (1.0 - binary_entropy(e11x)) - r.Qz * params.f * binary_entropy(ez);
    r.r_per_pulse = std::max(r.bracket_raw, 0.0);

    r.entanglement = entanglement_rate(params, link);
    const double nqm = r.entanglement.n_qm;
    r.r_source_limited = params.R_S / nqm * r.r_per_pulse;
    r.r_repeater_limited = 0.5 * r.entanglement.r_rep / nqm * r.r_per_pulse;
    r.regime = params.R_S <= 0.5 * r.entanglement.r_rep ? Regime::kSourceLimited : Regime::kRepeaterLimited;
    r.r_per_memory = std::min(params.R_S, 0.5 * r.entanglement.r_rep) / nqm * r.r_per_pulse;
    return r;
}

KeyRateReport key_rate(const SystemParams& params, SourceKind kind, const LinkState& link) {
    const SinglePhotonStats single = single_photon_stats(params, link);
    const GammaTable src = kind == SourceKind::kSingle ? single.z : source_gamma_z(params, kind, link);
    return assemble_key_rate(params, kind, link, single, src);
}

}  // namespace qkdrep
