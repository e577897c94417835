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

#include "doctest.h"
#include "qkdrep/encoder/encoder.hpp"

using namespace qkdrep;

namespace {

const std::vector<std::string> kRails{"a", "b"};

Matrix encoded(Basis basis, int bit, const SourceSpec& src, const SystemParams& p) {
    return reorder_modes(encode_user(basis, bit, src, p, "a", "b"), kRails).densify();
}

}  // namespace

TEST_SUITE("encoder") {

TEST_CASE("source specifications follow the parameter set") {
    SystemParams p;
    p.mu = 0.81;
    p.nu = 0.64;
    CHECK(source_spec(SourceKind::kCoherent, p, false).mean == doctest::Approx(0.81));
    CHECK(source_spec(SourceKind::kCoherent, p, true).mean == doctest::Approx(0.64));
    CHECK(source_spec(SourceKind::kSps, p).p == doctest::Approx(p.p));
    CHECK(rail_cutoff(source_spec(SourceKind::kSps, p), p).n_max() == p.sps_cutoff);
    CHECK(rail_cutoff(source_spec(SourceKind::kCoherent, p), p).n_max() ==
          cutoff_for_mean(0.81, p.leakage_tolerance).n_max());
}

TEST_CASE("z basis puts the photon in the rail named by the bit") {
    const SystemParams p;
    const SourceSpec single{SourceKind::kSingle, 0.0, 0.0};
    const Matrix z0 = encoded(Basis::kZ, 0, single, p);
    const Matrix z1 = encoded(Basis::kZ, 1, single, p);
    const std::size_t d = static_cast<std::size_t>(std::sqrt(double(z0.rows())));
    CHECK(z0(1 * d + 0, 1 * d + 0).real() == doctest::Approx(1.0));
    CHECK(z1(0 * d + 1, 0 * d + 1).real() == doctest::Approx(1.0));
}

TEST_CASE("x basis single photon is an equal superposition with a bit-dependent sign") {
    const SystemParams p;
    const SourceSpec single{SourceKind::kSingle, 0.0, 0.0};
    for (int bit : {0, 1}) {
        const auto op = reorder_modes(encode_user(Basis::kX, bit, single, p, "a", "b"), kRails);
        const Matrix rho = op.densify();
        const std::size_t db = op.dim("b");
        const std::size_t i10 = 1 * db + 0;
        const std::size_t i01 = 0 * db + 1;
        CHECK(rho(i10, i10).real() == doctest::Approx(0.5));
        CHECK(rho(i01, i01).real() == doctest::Approx(0.5));
        CHECK(rho(i10, i01).real() == doctest::Approx(bit == 0 ? 0.5 : -0.5));
        CHECK(rho.trace().real() == doctest::Approx(1.0));
    }
}

TEST_CASE("coherent encodings carry the full mean photon number") {
    SystemParams p;
    p.mu = 1.0;
    const SourceSpec coh = source_spec(SourceKind::kCoherent, p);
    for (Basis basis : {Basis::kZ, Basis::kX}) {
        for (int bit : {0, 1}) {
            const auto op = encode_user(basis, bit, coh, p, "a", "b");
            CHECK(std::abs(trace(op) - 1.0) < 1e-10);
            const std::vector<std::string> drop_b{"b"}, drop_a{"a"};
            const double na = mean_photon_number(partial_trace(op, drop_b).densify());
            const double nb = mean_photon_number(partial_trace(op, drop_a).densify());
            CHECK(na + nb == doctest::Approx(1.0).epsilon(1e-9));
            if (basis == Basis::kX) {
                CHECK(na == doctest::Approx(0.5).epsilon(1e-9));
            } else {
                CHECK((bit == 0 ? na : nb) == doctest::Approx(1.0).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("rail symmetry: bit 1 is bit 0 with the rails exchanged") {
    SystemParams p;
    p.p = 0.05;
    for (SourceKind kind : {SourceKind::kSps, SourceKind::kCoherent}) {
        const SourceSpec src = source_spec(kind, p);
        const Matrix z0 = encoded(Basis::kZ, 0, src, p);
        const std::vector<std::string> swapped{"b", "a"};
        const Matrix z1 = reorder_modes(encode_user(Basis::kZ, 1, src, p, "a", "b"), swapped).densify();
        // Relabelling rails of bit 1 (b, a) must reproduce bit 0 in (a, b).
        CHECK(max_abs_diff(z0, z1) < 1e-12);
    }
}

TEST_CASE("full encoding covers the four rails of both users") {
    const SystemParams p;
    const EncodedState e = encode(Basis::kX, 1, 0, SourceKind::kSps, p);
    CHECK(e.m == 1);
    CHECK(e.n == 0);
    for (const char* mode : {"r", "s", "u", "v"}) {
        CHECK(e.state.has_mode(mode));
    }
    CHECK(std::abs(trace(e.state) - 1.0) < 1e-12);
    CHECK(std::string(basis_name(Basis::kZ)) == "z");
}

}  // TEST_SUITE
