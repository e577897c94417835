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

// Secret key rate bounds for imperfect single-photon sources and for
// phase-randomized coherent sources in the infinite-decoy limit.
//
//   rate = min(R_S, R_rep/2) / N_QM
//          * max{ Q11^z (1 - h(e11^x)) - Q^z f h(E^z), 0 }
//
// with Q11^z = (1-p)^2 Y11^z for SPSs and Q11^z = mu nu e^{-mu-nu} Y11^z for
// coherent sources. Y11 and e11 always come from the single-photon pipeline.

#pragma once

#include <string>
#include <vector>

#include "qkdrep/components/params.hpp"
#include "qkdrep/encoder/encoder.hpp"
#include "qkdrep/keyrate/gamma.hpp"
#include "qkdrep/repeater/link.hpp"

namespace qkdrep {

// Shannon binary entropy with h(0) = h(1) = 0.
double binary_entropy(double x);

enum class Regime { kSourceLimited, kRepeaterLimited };
const char* regime_name(Regime regime);

struct SinglePhotonStats {
    GammaTable z;  // Y11^z and e11^z
    GammaTable x;  // e11^x
};

struct KeyRateReport {
    SourceKind source = SourceKind::kSps;

    // Single-photon terms.
    double Y11z = 0.0;
    double Q11z = 0.0;
    double e11x = 0.0;
    double e11z = 0.0;

    // Overall gain and error of the actual source (Q_pp, E_pp for SPSs;
    // Q_mu nu, E_mu nu for coherent sources).
    double Qz = 0.0;
    double Ez = 0.0;

    double bracket_raw = 0.0;   // before the clamp at 0
    double r_per_pulse = 0.0;   // clamped bracket
    double r_per_memory = 0.0;  // Hz per logical memory, min(R_S, R_rep/2)/N_QM prefactor
    double r_source_limited = 0.0;    // R_S / N_QM * bracket
    double r_repeater_limited = 0.0;  // R_rep / (2 N_QM) * bracket
    Regime regime = Regime::kSourceLimited;

    EntanglementRate entanglement;
    std::vector<double> chain;
    int n = 0;
    double L_rep = 0.0;
    double eta_sps = 0.0;
    SystemParams params;
};

SinglePhotonStats single_photon_stats(const SystemParams& params, const LinkState& link);

// Gamma table of the actual sources in the z basis. Honors
// neglect_double_emission for SPSs.
GammaTable source_gamma_z(const SystemParams& params, SourceKind kind, const LinkState& link);

// Assembles the report from precomputed statistics.
KeyRateReport assemble_key_rate(const SystemParams& params, SourceKind kind, const LinkState& link,
                                const SinglePhotonStats& single, const GammaTable& source_z);

// Full evaluation at the given repeater output. Both links of the setup are
// independent copies of link.
KeyRateReport key_rate(const SystemParams& params, SourceKind kind, const LinkState& link);

}  // namespace qkdrep
