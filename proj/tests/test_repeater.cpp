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

#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "qkdrep/repeater/fixture_cache.hpp"
#include "qkdrep/repeater/link.hpp"

using namespace qkdrep;

namespace {

// Lossless, dark-count-free hardware with perfect single-photon sources.
SystemParams ideal_params() {
    SystemParams p;
    p.p = 0.0;
    p.eta_w = 1.0;
    p.eta_r = 1.0;
    p.eta_d = 1.0;
    p.d_c = 0.0;
    p.L_att = 1e15;
    return p;
}

// |01><01| etc. of a two-memory density matrix with memory dimension d.
double population(const Matrix& rho, std::size_t d, std::size_t a, std::size_t b) {
    return rho(a * d + b, a * d + b).real();
}

}  // namespace

TEST_SUITE("repeater") {

TEST_CASE("ideal elementary link: heralding probability and vacuum admixture") {
    const SystemParams p = ideal_params();
    const LinkState link = elementary_link(p, 10.0, 0.5);
    // Each node emits into the channel with probability 1/2; one click out of
    // two detectors heralds either one channel photon (prob 1/2) or two
    // channel photons bunched on one detector (prob 1/4).
    CHECK(link.success_prob == doctest::Approx(0.75));
    CHECK(link.vacuum_weight() == doctest::Approx(1.0 / 3.0));
    CHECK(link.single_excitation_weight() == doctest::Approx(2.0 / 3.0));
    CHECK(bell_fidelity(link, +1) + bell_fidelity(link, -1) == doctest::Approx(2.0 / 3.0));
    CHECK(std::max(bell_fidelity(link, +1), bell_fidelity(link, -1)) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("ideal swap of two ideal links") {
    const SystemParams p = ideal_params();
    const LinkState link = elementary_link(p, 10.0, 0.5);
    const LinkState swapped = swap_links(link, link, p);
    CHECK(swapped.success_prob == doctest::Approx(5.0 / 9.0));
    CHECK(swapped.vacuum_weight() == doctest::Approx(0.6));
    CHECK(std::max(bell_fidelity(swapped, +1), bell_fidelity(swapped, -1)) == doctest::Approx(0.4));
    CHECK(swapped.nesting_level == 1);
    CHECK(swapped.span == doctest::Approx(20.0));
    CHECK(swapped.chain.size() == 2);
}

TEST_CASE("vanishing eta_sps gives a maximally entangled heralded state") {
    const SystemParams p = ideal_params();
    const LinkState link = elementary_link(p, 10.0, 1e-6);
    CHECK(link.vacuum_weight() < 1e-5);
    CHECK(std::max(bell_fidelity(link, +1), bell_fidelity(link, -1)) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("fast link construction agrees with the term-list reference") {
    SystemParams p;
    p.p = 1e-2;
    p.d_c = 1e-4;
    for (double eta : {0.05, 0.3, 0.8}) {
        const LinkState fast = elementary_link(p, 250.0, eta);
        const LinkState ref = elementary_link_reference(p, 250.0, eta);
        CHECK(fast.success_prob == doctest::Approx(ref.success_prob).epsilon(1e-12));
        CHECK(max_abs_diff(fast.dense(), ref.dense()) < 1e-12);
        const LinkState fs = swap_links(fast, fast, p);
        const LinkState rs = swap_links_reference(ref, ref, p);
        CHECK(fs.success_prob == doctest::Approx(rs.success_prob).epsilon(1e-12));
        CHECK(max_abs_diff(fs.dense(), rs.dense()) < 1e-12);
    }
}

TEST_CASE("repeater states are normalized, Hermitian and positive") {
    SystemParams p;
    for (int n = 0; n <= 2; ++n) {
        const LinkState s = repeater_state(p, n, 1000.0, 0.3);
        const Matrix rho = s.dense();
        CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(max_abs_diff(rho, rho.adjoint()) < 1e-14);
        CHECK(min_hermitian_eigenvalue(rho) > -1e-13);
        CHECK(s.chain.size() == static_cast<std::size_t>(n + 1));
        CHECK(s.nesting_level == n);
        CHECK(s.span == doctest::Approx(1000.0));
    }
}

TEST_CASE("two-level repeater state matches the independent numpy derivation") {
    // Frozen from an independent dense implementation (explicit Kraus loss,
    // beam-splitter unitaries and einsum contractions) at the default parameters.
    const SystemParams p;
    const LinkState s = repeater_state(p, 2, 1000.0, 0.3);
    REQUIRE(s.chain.size() == 3);
    CHECK(s.chain[0] == doctest::Approx(0.0037566166503674825).epsilon(1e-9));
    CHECK(s.chain[1] == doctest::Approx(0.39338200557868297).epsilon(1e-9));
    CHECK(s.chain[2] == doctest::Approx(0.23331711082460482).epsilon(1e-9));
    const Matrix rho = s.dense();
    const std::size_t d = s.memory_dim();
    CHECK(population(rho, d, 0, 0) == doctest::Approx(0.8357181376338928).epsilon(1e-8));
    CHECK(population(rho, d, 0, 1) == doctest::Approx(0.08210059425577823).epsilon(1e-8));
    CHECK(population(rho, d, 1, 1) == doctest::Approx(7.171068717230887e-05).epsilon(1e-6));
    // The coherence sign depends on the swap correction; its size does not.
    CHECK(std::abs(rho(0 * d + 1, 1 * d + 0)) == doctest::Approx(0.08178583177476745).epsilon(1e-8));

    const LinkState s1 = repeater_state(p, 1, 400.0, 0.3);
    CHECK(s1.chain[0] == doctest::Approx(0.01019502471228847).epsilon(1e-9));
    CHECK(s1.chain[1] == doctest::Approx(0.3939393789763386).epsilon(1e-9));
}

TEST_CASE("swapping links of different levels or spans is rejected") {
    const SystemParams p;
    const LinkState a = elementary_link(p, 100.0, 0.3);
    const LinkState b = elementary_link(p, 200.0, 0.3);
    const LinkState c = swap_links(a, a, p);
    CHECK_THROWS_AS(swap_links(a, b, p), NestingMismatchError);
    CHECK_THROWS_AS(swap_links(a, c, p), NestingMismatchError);
}

TEST_CASE("entanglement rate prefactors") {
    SystemParams p;
    p.N = 4;
    const LinkState s = repeater_state(p, 2, 800.0, 0.2);
    const EntanglementRate r = entanglement_rate(p, s);
    const double product = s.chain[0] * s.chain[1] * s.chain[2];
    CHECK(s.chain_product() == doctest::Approx(product));
    CHECK(r.n_qm == 32);
    // N P / (T0 N 2^(n+1)) with a cycle time T0 = L0 / c equals P / (2 L / c).
    const double T0 = (800.0 / 4.0) / p.c;
    CHECK(r.r_ent == doctest::Approx(p.N * product / (T0 * p.N * 8.0)));
    CHECK(r.r_ent == doctest::Approx(product / (2.0 * 800.0 / p.c)));
    CHECK(r.r_rep == doctest::Approx(32.0 * r.r_ent));
    CHECK(r.validity == doctest::Approx(p.N * r.r_ent * 800.0 / p.c));
    CHECK(r.valid == (r.validity >= 10.0));
    CHECK(r.warning.empty() == r.valid);
}

TEST_CASE("fixture cache round-trips link states through disk") {
    const auto path = std::filesystem::temp_directory_path() / "qkdrep_fixture_test.json";
    std::filesystem::remove(path);
    const SystemParams p;
    LinkState original;
    {
        FixtureCache cache(path);
        original = cache.repeater_state(p, 1, 600.0, 0.25);
        cache.insert_optimum("k", 0.125);
        cache.save();
        CHECK(cache.num_links() >= 1);
    }
    FixtureCache reloaded(path);
    const auto hit = reloaded.find_link(FixtureCache::link_key(p, 1, 600.0, 0.25));
    REQUIRE(hit.has_value());
    CHECK(max_abs_diff(hit->dense(), original.dense()) < 1e-15);
    CHECK(hit->chain == original.chain);
    REQUIRE(reloaded.find_optimum("k").has_value());
    CHECK(*reloaded.find_optimum("k") == 0.125);
    CHECK_FALSE(reloaded.find_optimum("missing").has_value());
    std::filesystem::remove(path);
}

}  // TEST_SUITE
