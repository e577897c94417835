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

// Dual-rail phase encoding of the users' BB84 states.
//
// z basis: the source output occupies rail 0 (bit 0) or rail 1 (bit 1); the
// other rail is vacuum. x basis: the source is split 50:50 across the rails
// and rail 1 picks up a phase pi * bit.

#pragma once

#include <string>

#include "qkdrep/components/params.hpp"
#include "qkdrep/fock/fock.hpp"
#include "qkdrep/fock/multimode.hpp"

namespace qkdrep {

enum class Basis { kZ, kX };

const char* basis_name(Basis basis);

// Describes one user's source. mean is the coherent mean photon number and
// p the double-photon probability of an SPS; the unused field is ignored.
struct SourceSpec {
    SourceKind kind = SourceKind::kSingle;
    double mean = 1.0;
    double p = 0.0;
};

// Source of the configured kind for Alice (use_nu = false) or Bob.
SourceSpec source_spec(SourceKind kind, const SystemParams& params, bool use_nu = false);

// Cutoff used for the rails of a source.
FockCutoff rail_cutoff(const SourceSpec& source, const SystemParams& params);

struct EncodedState {
    Basis basis = Basis::kZ;
    int m = 0;
    int n = 0;
    SourceKind source_kind = SourceKind::kSingle;
    MultimodeOperator state;  // modes r, s, u, v
};

// One user's two-rail state over (rail0, rail1).
MultimodeOperator encode_user(Basis basis, int bit, const SourceSpec& source, const SystemParams& params,
                              const std::string& rail0, const std::string& rail1);

// Alice's (r, s) and Bob's (u, v) encoded state for bits (m, n). Alice uses
// mean mu and Bob mean nu for coherent sources.
EncodedState encode(Basis basis, int m, int n, SourceKind kind, const SystemParams& params);

}  // namespace qkdrep
