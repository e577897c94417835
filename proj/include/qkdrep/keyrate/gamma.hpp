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

// Click-pattern statistics of the full setup: Alice's and Bob's encoded
// states, two independent repeater links, four butterflies and four detector
// pairs.
//
// Pairing: r meets memory A of link 1, s meets A of link 2, u meets B of
// link 1 and v meets B of link 2. A click pattern is accepted when every pair
// registers exactly one click; Gamma sums its probability over the 16
// accepted patterns and the four equiprobable bit pairs (m, n).

#pragma once

#include <string>

#include "qkdrep/components/detection.hpp"
#include "qkdrep/components/params.hpp"
#include "qkdrep/encoder/encoder.hpp"
#include "qkdrep/fock/matrix.hpp"
#include "qkdrep/repeater/link.hpp"

namespace qkdrep {

enum class Side { kAlice, kBob };
enum class BsmType { kTypeI, kTypeII };
enum class BitAction { kKeep, kFlip };

// Type I when both pairs of the side clicked on the same port index.
BsmType bsm_type(const ClickPattern& pattern, Side side);

// Bob's post-processing: z basis always flips; x basis keeps on matching
// types and flips otherwise.
BitAction bit_assignment(Basis basis, BsmType alice, BsmType bob);

// Whether Alice's bit m and Bob's bit n agree after Bob's bit assignment.
bool is_correct(Basis basis, int m, int n, const ClickPattern& pattern);

struct GammaTable {
    Basis basis = Basis::kZ;
    std::string label;     // "11", "pp" or "mu nu"
    double gamma = 0.0;    // accepted-pattern probability
    double gamma_c = 0.0;  // ... with matching bits
    double gamma_e = 0.0;  // ... with mismatching bits

    // Error rate gamma_e / gamma (0 when gamma is 0).
    double qber() const { return gamma > 0.0 ? gamma_e / gamma : 0.0; }
};

// Label of the source pair, e.g. "11" for single photons.
std::string source_pair_label(const SourceSpec& alice, const SourceSpec& bob);

// Fast evaluation by contracting the ring of dense two-mode tensors.
GammaTable gamma_table(const SystemParams& params, Basis basis, const SourceSpec& alice, const SourceSpec& bob,
                       const LinkState& link1, const LinkState& link2);

// Same quantity on dense user states that are supplied directly: one
// (rail0, rail1) state per bit for each user.
GammaTable gamma_table_dense(const SystemParams& params, Basis basis, const Matrix (&alice)[2],
                             std::size_t dim_alice, const Matrix (&bob)[2], std::size_t dim_bob,
                             const LinkState& link1, const LinkState& link2);

// Reference evaluation that builds the eight-mode term list, applies the four
// butterflies and measures each click pattern with click_probability. Much
// slower; intended for cross-checks at small cutoffs.
GammaTable gamma_table_reference(const SystemParams& params, Basis basis, const SourceSpec& alice,
                                 const SourceSpec& bob, const LinkState& link1, const LinkState& link2);

}  // namespace qkdrep
