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

#include "qkdrep/keyrate/gamma.hpp"

#include <array>
#include <stdexcept>

#include "qkdrep/components/butterfly.hpp"
#include "qkdrep/fock/multimode.hpp"

namespace qkdrep {

BsmType bsm_type(const ClickPattern& pattern, Side side) {
    const std::size_t first = side == Side::kAlice ? 0 : 2;
    return pattern.ports[first] == pattern.ports[first + 1] ? BsmType::kTypeI : BsmType::kTypeII;
}

BitAction bit_assignment(Basis basis, BsmType alice, BsmType bob) {
    if (basis == Basis::kZ) {
        return BitAction::kFlip;
    }
    return alice == bob ? BitAction::kKeep : BitAction::kFlip;
}

bool is_correct(Basis basis, int m, int n, const ClickPattern& pattern) {
    const BitAction action = bit_assignment(basis, bsm_type(pattern, Side::kAlice), bsm_type(pattern, Side::kBob));
    const int bob_bit = action == BitAction::kFlip ? 1 - n : n;
    return bob_bit == m;
}

std::string source_pair_label(const SourceSpec& alice, const SourceSpec& bob) {
    auto one = [](const SourceSpec& s, bool bob_side) -> std::string {
        switch (s.kind) {
            case SourceKind::kSingle:
                return "1";
            case SourceKind::kSps:
                return "p";
            case SourceKind::kCoherent:
                return bob_side ? "nu" : "mu";
        }
        return "?";
    };
    const std::string a = one(alice, false);
    const std::string b = one(bob, true);
    return (a.size() > 1 || b.size() > 1) ? a + " " + b : a + b;
}

GammaTable gamma_table_dense(const SystemParams& params, Basis basis, const Matrix (&alice)[2],
                             std::size_t dim_alice, const Matrix (&bob)[2], std::size_t dim_bob,
                             const LinkState& link1, const LinkState& link2) {
    const std::size_t dm = link1.memory_dim();
    if (link2.memory_dim() != dm) {
        throw std::invalid_argument("both links must share the memory dimension");
    }
    const double eta_u = params.user_arm_efficiency();
    const double eta_m = params.memory_arm_efficiency();
    const ButterflyKernel ka(dim_alice, dm, eta_u, eta_m, params.d_c);
    const ButterflyKernel kb(dim_bob, dm, eta_u, eta_m, params.d_c);
    const std::array<PairOutcome, 2> outcome = {PairOutcome::kClick0, PairOutcome::kClick1};

    const Matrix y1 = realign(link1.dense(), dm, dm);              // [(a a'),(b b')]
    const Matrix y2t = realign(link2.dense(), dm, dm).transpose();  // [(b b'),(a a')]

    // V[m][cr] = X_A^T K_r Y1, indexed [(s s'),(b1 b1')].
    Matrix v[2][2];
    for (int m = 0; m < 2; ++m) {
        const Matrix xat = realign(alice[m], dim_alice, dim_alice).transpose();
        for (int c = 0; c < 2; ++c) {
            v[m][c] = xat * ka(outcome[c]) * y1;
        }
    }
    // Z[n][cu][cv] = K_u^T X_B K_v, indexed [(b1 b1'),(b2 b2')].
    Matrix z[2][2][2];
    for (int n = 0; n < 2; ++n) {
        const Matrix xb = realign(bob[n], dim_bob, dim_bob);
        for (int cu = 0; cu < 2; ++cu) {
            const Matrix left = kb(outcome[cu]).transpose() * xb;
            for (int cv = 0; cv < 2; ++cv) {
                z[n][cu][cv] = left * kb(outcome[cv]);
            }
        }
    }

    GammaTable g;
    g.basis = basis;
    for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
            for (int cr = 0; cr < 2; ++cr) {
                for (int cu = 0; cu < 2; ++cu) {
                    for (int cv = 0; cv < 2; ++cv) {
                        // T[(s s'),(a2 a2')] closes the ring up to the s pair.
                        const Matrix t = v[m][cr] * z[n][cu][cv] * y2t;
                        for (int cs = 0; cs < 2; ++cs) {
                            const double prob = 0.25 * elementwise_dot(t, ka(outcome[cs])).real();
                            const ClickPattern pattern{{cr, cs, cu, cv}};
                            g.gamma += prob;
                            if (is_correct(basis, m, n, pattern)) {
                                g.gamma_c += prob;
                            } else {
                                g.gamma_e += prob;
                            }
                        }
                    }
                }
            }
        }
    }
    return g;
}

GammaTable gamma_table(const SystemParams& params, Basis basis, const SourceSpec& alice, const SourceSpec& bob,
                       const LinkState& link1, const LinkState& link2) {
    Matrix a[2];
    Matrix b[2];
    for (int bit = 0; bit < 2; ++bit) {
        a[bit] = encode_user(basis, bit, alice, params, "r", "s").densify();
        b[bit] = encode_user(basis, bit, bob, params, "u", "v").densify();
    }
    const std::size_t da = rail_cutoff(alice, params).dim();
    const std::size_t db = rail_cutoff(bob, params).dim();
    GammaTable g = gamma_table_dense(params, basis, a, da, b, db, link1, link2);
    g.label = source_pair_label(alice, bob);
    return g;
}

namespace {

// Applies the butterflies pair by pair and measures each pair right away, so
// the term list never carries more than one freshly split pair. Fills
// probs[pattern index] with the (unweighted) pattern probabilities.
void measure_pairs(const MultimodeOperator& state, std::size_t pair, int index, const SystemParams& params,
                   double eta_u, double eta_m, std::array<double, 16>& probs) {
    static const std::array<const char*, 4> users = {"r", "s", "u", "v"};
    static const std::array<const char*, 4> memories = {"A1", "A2", "B1", "B2"};
    const std::string p0 = detector_mode(pair, 0);
    const std::string p1 = detector_mode(pair, 1);
    const MultimodeOperator out = butterfly_apply(state, users[pair], memories[pair], eta_u, eta_m, p0, p1);
    for (int port = 0; port < 2; ++port) {
        const int next = 2 * index + port;
        if (pair == 3) {
            probs[static_cast<std::size_t>(next)] = pair_expectation(out, p0, p1, click_on(port), params.d_c).real();
        } else {
            measure_pairs(measure_pair(out, p0, p1, click_on(port), params.d_c), pair + 1, next, params, eta_u,
                          eta_m, probs);
        }
    }
}

}  // namespace

GammaTable gamma_table_reference(const SystemParams& params, Basis basis, const SourceSpec& alice,
                                 const SourceSpec& bob, const LinkState& link1, const LinkState& link2) {
    const double eta_u = params.user_arm_efficiency();
    const double eta_m = params.memory_arm_efficiency();
    const MultimodeOperator links =
        tensor(rename_mode(rename_mode(link1.rho, "A", "A1"), "B", "B1"),
               rename_mode(rename_mode(link2.rho, "A", "A2"), "B", "B2"));
    GammaTable g;
    g.basis = basis;
    g.label = source_pair_label(alice, bob);
    for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
            const MultimodeOperator st = tensor(tensor(encode_user(basis, m, alice, params, "r", "s"),
                                                       encode_user(basis, n, bob, params, "u", "v")),
                                                links);
            std::array<double, 16> probs{};
            measure_pairs(st, 0, 0, params, eta_u, eta_m, probs);
            for (int idx = 0; idx < 16; ++idx) {
                const ClickPattern pattern = ClickPattern::from_index(idx);
                const double prob = 0.25 * probs[static_cast<std::size_t>(idx)];
                g.gamma += prob;
                if (is_correct(basis, m, n, pattern)) {
                    g.gamma_c += prob;
                } else {
                    g.gamma_e += prob;
                }
            }
        }
    }
    return g;
}

}  // namespace qkdrep
