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

#include "qkdrep/keyrate/monte_carlo.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "qkdrep/fock/fock.hpp"

namespace qkdrep {

namespace {

std::vector<double> diagonal(const Matrix& m) {
    std::vector<double> d(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        d[i] = std::max(m(i, i).real(), 0.0);
    }
    return d;
}

double sigma(double p, std::uint64_t shots) { return std::sqrt(std::max(p * (1.0 - p), 0.0) / shots); }

}  // namespace

MonteCarloEstimate monte_carlo_gamma_z(const SystemParams& params, const SourceSpec& alice, const SourceSpec& bob,
                                       const LinkState& link1, const LinkState& link2, std::uint64_t shots,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    const auto make_dist = [](const std::vector<double>& w) { return std::discrete_distribution<int>(w.begin(), w.end()); };
    // Photon-number distribution of the occupied rail.
    const auto rail_weights = [&](const SourceSpec& s) {
        const MultimodeOperator st = encode_user(Basis::kZ, 0, s, params, "a", "b");
        return diagonal(partial_trace(st, std::vector<std::string>{"b"}).densify());
    };
    auto alice_n = make_dist(rail_weights(alice));
    auto bob_n = make_dist(rail_weights(bob));
    const std::size_t dm = link1.memory_dim();
    auto link1_ab = make_dist(diagonal(link1.dense()));
    auto link2_ab = make_dist(diagonal(link2.dense()));

    const double eta_u = params.user_arm_efficiency();
    const double eta_m = params.memory_arm_efficiency();
    const double dc = params.d_c;

    // Output splitting tables: prob[x][y][p], p photons to output a (x1).
    const int max_user = static_cast<int>(std::max(rail_weights(alice).size(), rail_weights(bob).size()));
    const int max_mem = static_cast<int>(dm);
    std::vector<std::vector<std::discrete_distribution<int>>> split(static_cast<std::size_t>(max_user));
    for (int x = 0; x < max_user; ++x) {
        for (int y = 0; y < max_mem; ++y) {
            auto col = beam_splitter_column(x, y, 0.5);
            for (double& a : col) {
                a *= a;
            }
            split[static_cast<std::size_t>(x)].emplace_back(col.begin(), col.end());
        }
    }

    // Returns the clicked port (0 or 1) of a pair, or -1 when the pair does
    // not register exactly one click.
    const auto pair_click = [&](int user, int memory) {
        const int u = user > 0 ? std::binomial_distribution<int>(user, eta_u)(rng) : 0;
        const int m = memory > 0 ? std::binomial_distribution<int>(memory, eta_m)(rng) : 0;
        int to_a = 0;
        if (u + m > 0) {
            to_a = split[static_cast<std::size_t>(u)][static_cast<std::size_t>(m)](rng);
        }
        const int to_b = u + m - to_a;
        const bool click0 = to_b > 0 || uni(rng) < dc;  // x0 on output b
        const bool click1 = to_a > 0 || uni(rng) < dc;  // x1 on output a
        if (click0 == click1) {
            return -1;
        }
        return click0 ? 0 : 1;
    };

    std::uint64_t accepted = 0;
    std::uint64_t correct = 0;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const int m = uni(rng) < 0.5 ? 0 : 1;
        const int n = uni(rng) < 0.5 ? 0 : 1;
        const int na = alice_n(rng);
        const int nb = bob_n(rng);
        const int ab1 = link1_ab(rng);
        const int ab2 = link2_ab(rng);
        const int a1 = ab1 / static_cast<int>(dm);
        const int b1 = ab1 % static_cast<int>(dm);
        const int a2 = ab2 / static_cast<int>(dm);
        const int b2 = ab2 % static_cast<int>(dm);
        const int r = m == 0 ? na : 0;
        const int s = m == 0 ? 0 : na;
        const int u = n == 0 ? nb : 0;
        const int v = n == 0 ? 0 : nb;
        const int cr = pair_click(r, a1);
        const int cs = pair_click(s, a2);
        const int cu = pair_click(u, b1);
        const int cv = pair_click(v, b2);
        if (cr < 0 || cs < 0 || cu < 0 || cv < 0) {
            continue;
        }
        ++accepted;
        if (m + n == 1) {
            ++correct;
        }
    }
    MonteCarloEstimate e;
    e.shots = shots;
    e.gamma = static_cast<double>(accepted) / static_cast<double>(shots);
    e.gamma_c = static_cast<double>(correct) / static_cast<double>(shots);
    e.gamma_e = e.gamma - e.gamma_c;
    e.sigma_gamma = sigma(e.gamma, shots);
    e.sigma_gamma_c = sigma(e.gamma_c, shots);
    e.sigma_gamma_e = sigma(e.gamma_e, shots);
    return e;
}

}  // namespace qkdrep
