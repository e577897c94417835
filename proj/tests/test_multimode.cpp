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

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "qkdrep/fock/multimode.hpp"
#include "support/dense_oracle.hpp"

using namespace qkdrep;

namespace {

Matrix random_state(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Matrix a(dim, dim);
    for (cplx& v : a.data()) {
        v = {g(rng), g(rng)};
    }
    Matrix rho = a * a.adjoint();
    rho *= 1.0 / rho.trace().real();
    return rho;
}

// Dense partial trace over the middle factor of a (d0, d1, d2) operator.
Matrix trace_middle(const Matrix& m, std::size_t d0, std::size_t d1, std::size_t d2) {
    Matrix out(d0 * d2, d0 * d2);
    for (std::size_t a = 0; a < d0; ++a) {
        for (std::size_t c = 0; c < d2; ++c) {
            for (std::size_t a2 = 0; a2 < d0; ++a2) {
                for (std::size_t c2 = 0; c2 < d2; ++c2) {
                    for (std::size_t b = 0; b < d1; ++b) {
                        out(a * d2 + c, a2 * d2 + c2) += m((a * d1 + b) * d2 + c, (a2 * d1 + b) * d2 + c2);
                    }
                }
            }
        }
    }
    return out;
}

const std::vector<std::string> kXab{"x", "a", "b"};

}  // namespace

TEST_SUITE("multimode") {

TEST_CASE("dense round trip preserves the operator and mode metadata") {
    const Matrix rho = random_state(12, 1);
    const MultimodeOperator op = MultimodeOperator::from_dense(rho, kXab, {2, 3, 2});
    CHECK(op.num_modes() == 3);
    CHECK(op.dim("a") == 3);
    CHECK(op.mode_index("b") == 2);
    CHECK(op.has_mode("x"));
    CHECK_FALSE(op.has_mode("z"));
    CHECK_THROWS_AS(op.dim("z"), UnknownModeError);
    CHECK(max_abs_diff(op.densify(), rho) < 1e-15);
    CHECK(std::abs(trace(op) - 1.0) < 1e-14);
}

TEST_CASE("tensor products agree with kron and reject overlapping modes") {
    const Matrix r1 = random_state(2, 2);
    const Matrix r2 = random_state(3, 3);
    const auto a = MultimodeOperator::single("a", r1);
    const auto b = MultimodeOperator::single("b", r2);
    CHECK(max_abs_diff(tensor(a, b).densify(), kron(r1, r2)) < 1e-15);
    CHECK_THROWS_AS(tensor(a, a), std::invalid_argument);
}

TEST_CASE("partial trace matches the dense contraction") {
    const Matrix rho = random_state(24, 4);
    const auto op = MultimodeOperator::from_dense(rho, kXab, {2, 4, 3});
    const std::vector<std::string> drop{"a"};
    const MultimodeOperator reduced = partial_trace(op, drop);
    CHECK(reduced.modes() == std::vector<std::string>{"x", "b"});
    CHECK(max_abs_diff(reduced.densify(), trace_middle(rho, 2, 4, 3)) < 1e-14);
}

TEST_CASE("beam splitter on a correlated three-mode state matches the oracle") {
    const std::size_t dx = 2, da = 2, db = 3;
    const std::size_t d = da + db - 1;
    const Matrix rho = random_state(dx * da * db, 5);
    const auto op = MultimodeOperator::from_dense(rho, kXab, {dx, da, db});
    for (double t : {0.5, 0.27}) {
        const MultimodeOperator out = reorder_modes(apply_beam_splitter(op, "a", "b", t), kXab);
        REQUIRE(out.dim("a") == d);
        REQUIRE(out.dim("b") == d);
        const Matrix got = out.densify();
        // Oracle: (I_x (x) U) rho (I_x (x) U)^+ with U from the generator.
        const oracle::Dense u = oracle::beam_splitter(d, t);
        oracle::Dense full(dx * d * d);
        for (std::size_t x = 0; x < dx; ++x) {
            for (std::size_t x2 = 0; x2 < dx; ++x2) {
                std::vector<cplx> block(da * db * da * db);
                for (std::size_t r = 0; r < da * db; ++r) {
                    for (std::size_t c = 0; c < da * db; ++c) {
                        block[r * da * db + c] = rho(x * da * db + r, x2 * da * db + c);
                    }
                }
                const oracle::Dense evolved = oracle::conjugate(u, oracle::embed(block, da, db, d));
                for (std::size_t r = 0; r < d * d; ++r) {
                    for (std::size_t c = 0; c < d * d; ++c) {
                        full(x * d * d + r, x2 * d * d + c) = evolved(r, c);
                    }
                }
            }
        }
        double worst = 0.0;
        for (std::size_t r = 0; r < full.n; ++r) {
            for (std::size_t c = 0; c < full.n; ++c) {
                worst = std::max(worst, std::abs(got(r, c) - full(r, c)));
            }
        }
        CHECK(worst < 1e-12);
        CHECK(std::abs(trace(out) - 1.0) < 1e-13);
        CHECK(min_hermitian_eigenvalue(got) > -1e-12);
    }
}

TEST_CASE("Hong-Ou-Mandel dip in the term-list representation") {
    const FockCutoff cut(2);
    const auto in = tensor(MultimodeOperator::single("a", number_state(1, cut)),
                           MultimodeOperator::single("b", number_state(1, cut)));
    const std::vector<std::string> order{"a", "b"};
    const Matrix out = reorder_modes(apply_beam_splitter(in, "a", "b", 0.5), order).densify();
    // Outputs are 5-dimensional; |p,q> sits at index 5p+q.
    CHECK(std::abs(out(6, 6)) < 1e-15);                // |1,1>
    CHECK(out(2, 2).real() == doctest::Approx(0.5));   // |0,2>
    CHECK(out(10, 10).real() == doctest::Approx(0.5)); // |2,0>
}

TEST_CASE("mode-local loss equals the single-mode channel") {
    const Matrix r1 = random_state(3, 6);
    const Matrix r2 = random_state(2, 7);
    const auto op = tensor(MultimodeOperator::single("a", r1), MultimodeOperator::single("b", r2));
    const Matrix got = apply_loss(op, "a", 0.4).densify();
    CHECK(max_abs_diff(got, kron(apply_loss(r1, 0.4), r2)) < 1e-15);
}

TEST_CASE("local unitaries act on their own mode only") {
    const Matrix rho = random_state(6, 8);
    const auto op = MultimodeOperator::from_dense(rho, {"a", "b"}, {2, 3});
    const Matrix ph = phase_shift(3, 0.7);
    const Matrix u = kron(Matrix::identity(2), ph);
    CHECK(max_abs_diff(apply_local_unitary(op, "b", ph).densify(), u * rho * u.adjoint()) < 1e-14);
}

TEST_CASE("compress merges identical terms and drops negligible ones") {
    const auto a = MultimodeOperator::single("a", number_state(1, FockCutoff(2)));
    MultimodeOperator sum = a;
    sum.add(a);
    sum.compress();
    CHECK(sum.num_terms() == 1);
    CHECK(std::abs(trace(sum) - 2.0) < 1e-15);
    MultimodeOperator tiny = a;
    tiny.scale(1e-20);
    sum.add(tiny);
    sum.compress();
    CHECK(sum.num_terms() == 1);
}

TEST_CASE("rename, pad and reorder are bookkeeping only") {
    const Matrix rho = random_state(6, 9);
    const auto op = MultimodeOperator::from_dense(rho, {"a", "b"}, {2, 3});
    const auto renamed = rename_mode(op, "a", "c");
    CHECK(renamed.has_mode("c"));
    CHECK_FALSE(renamed.has_mode("a"));
    const auto padded = pad_mode(op, "a", 4);
    CHECK(padded.dim("a") == 4);
    CHECK(std::abs(trace(padded) - 1.0) < 1e-14);
    const std::vector<std::string> swapped{"b", "a"};
    const auto back = reorder_modes(reorder_modes(op, swapped), std::vector<std::string>{"a", "b"});
    CHECK(max_abs_diff(back.densify(), rho) < 1e-15);
    CHECK_THROWS(reorder_modes(op, std::vector<std::string>{"a", "z"}));
}

}  // TEST_SUITE
