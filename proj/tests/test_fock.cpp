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
#include <numbers>

#include "doctest.h"
#include "qkdrep/fock/fock.hpp"
#include "support/dense_oracle.hpp"

using namespace qkdrep;

namespace {

oracle::Dense to_dense(const Matrix& m) {
    oracle::Dense d(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            d(r, c) = m(r, c);
        }
    }
    return d;
}

double max_diff(const Matrix& m, const oracle::Dense& d) {
    double worst = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            worst = std::max(worst, std::abs(m(r, c) - d(r, c)));
        }
    }
    return worst;
}

}  // namespace

TEST_SUITE("fock") {

TEST_CASE("number and coherent states are normalized and positive") {
    const FockCutoff cut(6);
    for (int n = 0; n <= 6; ++n) {
        const Matrix rho = number_state(n, cut);
        CHECK(rho.trace().real() == doctest::Approx(1.0));
        CHECK(mean_photon_number(rho) == doctest::Approx(n));
    }
    const FockCutoff big = cutoff_for_mean(1.44);
    const Matrix coh = coherent_state(cplx{1.2, 0.0}, big);
    CHECK(coh.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mean_photon_number(coh) == doctest::Approx(1.44).epsilon(1e-10));
    CHECK(min_hermitian_eigenvalue(coh) > -1e-14);
    CHECK(max_abs_diff(coh, coh.adjoint()) < 1e-15);
}

TEST_CASE("cutoff selection bounds the Poisson tail") {
    for (double mu : {0.1, 0.5, 1.0, 2.0, 3.24}) {
        const FockCutoff cut = cutoff_for_mean(mu, 1e-12);
        CHECK(poisson_tail(mu, cut.n_max()) < 1e-12);
        CHECK(poisson_tail(mu, cut.n_max() - 1) >= 1e-12);
    }
    // Unit mean needs n_max = 14 for a 1e-12 tail.
    CHECK(cutoff_for_mean(1.0, 1e-12).n_max() == 14);
    CHECK(poisson_tail(0.0, 2) == 0.0);
}

TEST_CASE("truncating a coherent state too hard raises TruncationError") {
    CHECK_THROWS_AS(coherent_amplitudes(cplx{2.0, 0.0}, FockCutoff(3), 1e-12), TruncationError);
    CHECK_NOTHROW(coherent_amplitudes(cplx{2.0, 0.0}, FockCutoff(3), 1.0));
}

TEST_CASE("binomials and log-factorials") {
    CHECK(binomial(5, 2) == 10.0);
    CHECK(binomial(4, 0) == 1.0);
    CHECK(binomial(3, 4) == 0.0);
    CHECK(log_factorial(10) == doctest::Approx(std::log(3628800.0)));
}

TEST_CASE("loss composes multiplicatively and is trace preserving") {
    const FockCutoff cut(5);
    const Matrix rho = 0.5 * number_state(3, cut) + 0.25 * number_state(5, cut) + 0.25 * number_state(1, cut);
    const Matrix twice = apply_loss(apply_loss(rho, 0.7), 0.4);
    const Matrix once = apply_loss(rho, 0.28);
    CHECK(max_abs_diff(twice, once) < 1e-14);
    CHECK(once.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mean_photon_number(once) == doctest::Approx(0.28 * mean_photon_number(rho)));
    CHECK(max_abs_diff(apply_loss(rho, 1.0), rho) < 1e-15);
    CHECK(apply_loss(rho, 0.0)(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("loss channel matches the beam-splitter-with-environment oracle") {
    const FockCutoff cut(4);
    const Matrix rho = coherent_state(cplx{0.6, 0.3}, cut, 1.0);
    for (double eta : {0.0, 0.13, 0.5, 0.91, 1.0}) {
        CHECK(max_diff(apply_loss(rho, eta), oracle::loss(to_dense(rho), eta)) < 1e-12);
    }
}

TEST_CASE("lossy coherent states stay coherent") {
    // Truncation error enters through amplitudes, i.e. as the square root of
    // the discarded Poisson tail; a tail of 1e-20 keeps it far below 1e-9.
    const FockCutoff cut = cutoff_for_mean(4.0, 1e-20);
    const Matrix out = apply_loss(coherent_state(cplx{2.0, 0.0}, cut), 0.36);
    CHECK(max_abs_diff(out, coherent_state(cplx{1.2, 0.0}, cut)) < 1e-9);
}

TEST_CASE("beam splitter isometry matches the generator exponential") {
    for (std::size_t da : {1u, 2u, 3u}) {
        for (std::size_t db : {1u, 2u, 4u}) {
            for (double t : {0.0, 0.2, 0.5, 0.83, 1.0}) {
                const Matrix u = beam_splitter_isometry(da, db, t);
                const std::size_t d = da + db - 1;
                REQUIRE(u.rows() == d * d);
                REQUIRE(u.cols() == da * db);
                // Isometry.
                CHECK(max_abs_diff(u.adjoint() * u, Matrix::identity(da * db)) < 1e-13);
                const oracle::Dense ref = oracle::beam_splitter(d, t);
                double worst = 0.0;
                for (std::size_t i = 0; i < da; ++i) {
                    for (std::size_t k = 0; k < db; ++k) {
                        for (std::size_t row = 0; row < d * d; ++row) {
                            worst = std::max(worst, std::abs(u(row, i * db + k) - ref(row, i * d + k)));
                        }
                    }
                }
                CHECK(worst < 1e-12);
            }
        }
    }
}

TEST_CASE("Hong-Ou-Mandel: |1,1> never exits as |1,1> from a 50:50 splitter") {
    for (auto conv : {BeamSplitterConvention::kStandard, BeamSplitterConvention::kFlipped}) {
        const std::vector<double> col = beam_splitter_column(1, 1, 0.5, conv);
        REQUIRE(col.size() == 3);
        CHECK(std::abs(col[1]) < 1e-15);
        CHECK(col[0] * col[0] == doctest::Approx(0.5));
        CHECK(col[2] * col[2] == doctest::Approx(0.5));
    }
    // Bunching generalizes: |n,n> has zero amplitude in every odd-odd output.
    const std::vector<double> col = beam_splitter_column(2, 2, 0.5);
    CHECK(std::abs(col[1]) < 1e-14);
    CHECK(std::abs(col[3]) < 1e-14);
}

TEST_CASE("conventions differ only by signs") {
    for (int i = 0; i <= 3; ++i) {
        for (int k = 0; k <= 3; ++k) {
            const auto s = beam_splitter_column(i, k, 0.3, BeamSplitterConvention::kStandard);
            const auto f = beam_splitter_column(i, k, 0.3, BeamSplitterConvention::kFlipped);
            REQUIRE(s.size() == f.size());
            for (std::size_t p = 0; p < s.size(); ++p) {
                CHECK(std::abs(s[p]) == doctest::Approx(std::abs(f[p])));
            }
        }
    }
    // Standard convention: a+ -> sqrt(t) a+ + sqrt(1-t) b+.
    const auto col = beam_splitter_column(1, 0, 0.3);
    CHECK(col[1] == doctest::Approx(std::sqrt(0.3)));
    CHECK(col[0] == doctest::Approx(std::sqrt(0.7)));
}

TEST_CASE("phase shifter is diagonal and unitary") {
    const Matrix ph = phase_shift(4, std::numbers::pi);
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK(ph(n, n).real() == doctest::Approx(n % 2 == 0 ? 1.0 : -1.0));
    }
    CHECK(max_abs_diff(ph * ph.adjoint(), Matrix::identity(4)) < 1e-15);
}

TEST_CASE("matrix realignment round-trips and elementwise_dot equals tr(a b^T)") {
    Matrix joint(6, 6);
    for (std::size_t r = 0; r < 6; ++r) {
        for (std::size_t c = 0; c < 6; ++c) {
            joint(r, c) = cplx{double(r) + 0.1 * double(c), double(r * c) * 0.01};
        }
    }
    const Matrix re = realign(joint, 2, 3);
    CHECK(re.rows() == 4);
    CHECK(re.cols() == 9);
    CHECK(max_abs_diff(realign_inverse(re, 2, 3), joint) < 1e-15);
    // [(a a'), (b b')] layout: element (a b, a' b') sits at (a*2+a', b*3+b').
    CHECK(re(1 * 2 + 0, 2 * 3 + 1) == joint(1 * 3 + 2, 0 * 3 + 1));
    const Matrix b = Matrix::identity(6) + joint;
    CHECK(std::abs(elementwise_dot(joint, b) - (joint * b.transpose()).trace()) < 1e-10);
}

TEST_CASE("kron and Hermitian eigenvalue helper") {
    const Matrix a = Matrix::diagonal(std::vector<double>{1.0, -2.0});
    const Matrix b = Matrix::diagonal(std::vector<double>{3.0, 0.5});
    CHECK(min_hermitian_eigenvalue(kron(a, b)) == doctest::Approx(-6.0));
    Matrix h(2, 2);
    h(0, 1) = cplx{0.0, 1.0};
    h(1, 0) = cplx{0.0, -1.0};
    CHECK(min_hermitian_eigenvalue(h) == doctest::Approx(-1.0));
}

}  // TEST_SUITE
