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

#include "qkdrep/components/detection.hpp"

#include <stdexcept>

namespace qkdrep {

namespace {

// tr((A (x) B) M) for a diagonal pair POVM.
cplx factor_expectation(const Matrix& a, const Matrix& b, PairOutcome outcome, double d_c) {
    cplx vac_a = a(0, 0);
    cplx vac_b = b(0, 0);
    cplx occ_a = a.trace() - vac_a;
    cplx occ_b = b.trace() - vac_b;
    return outcome_weight(outcome, 0, 0, d_c) * vac_a * vac_b + outcome_weight(outcome, 1, 0, d_c) * occ_a * vac_b +
           outcome_weight(outcome, 0, 1, d_c) * vac_a * occ_b + outcome_weight(outcome, 1, 1, d_c) * occ_a * occ_b;
}

}  // namespace

double outcome_weight(PairOutcome outcome, std::size_t n0, std::size_t n1, double d_c) {
    const double click0 = n0 > 0 ? 1.0 : d_c;
    const double click1 = n1 > 0 ? 1.0 : d_c;
    switch (outcome) {
        case PairOutcome::kClick0:
            return click0 * (1.0 - click1);
        case PairOutcome::kClick1:
            return (1.0 - click0) * click1;
        case PairOutcome::kBoth:
            return click0 * click1;
        case PairOutcome::kNone:
            return (1.0 - click0) * (1.0 - click1);
    }
    return 0.0;
}

Matrix pair_povm(PairOutcome outcome, std::size_t dim0, std::size_t dim1, double d_c) {
    Matrix m(dim0 * dim1, dim0 * dim1);
    for (std::size_t n0 = 0; n0 < dim0; ++n0) {
        for (std::size_t n1 = 0; n1 < dim1; ++n1) {
            m(n0 * dim1 + n1, n0 * dim1 + n1) = outcome_weight(outcome, n0, n1, d_c);
        }
    }
    return m;
}

std::string detector_mode(std::size_t pair, int port) {
    if (pair >= kPairNames.size() || (port != 0 && port != 1)) {
        throw std::invalid_argument("invalid detector pair or port");
    }
    return std::string(kPairNames[pair]) + (port == 0 ? "0" : "1");
}

ClickPattern ClickPattern::from_index(int index) {
    if (index < 0 || index > 15) {
        throw std::invalid_argument("click pattern index must lie in [0, 15]");
    }
    return ClickPattern{{(index >> 3) & 1, (index >> 2) & 1, (index >> 1) & 1, index & 1}};
}

cplx pair_expectation(const MultimodeOperator& state, std::string_view mode0, std::string_view mode1,
                      PairOutcome outcome, double d_c) {
    const std::size_t i0 = state.mode_index(mode0);
    const std::size_t i1 = state.mode_index(mode1);
    cplx total = 0.0;
    for (const Term& t : state.terms()) {
        cplx v = t.weight * factor_expectation(t.factors[i0], t.factors[i1], outcome, d_c);
        for (std::size_t m = 0; m < t.factors.size(); ++m) {
            if (m != i0 && m != i1) {
                v *= t.factors[m].trace();
            }
        }
        total += v;
    }
    return total;
}

MultimodeOperator measure_pair(const MultimodeOperator& state, std::string_view mode0, std::string_view mode1,
                               PairOutcome outcome, double d_c) {
    const std::size_t i0 = state.mode_index(mode0);
    const std::size_t i1 = state.mode_index(mode1);
    std::vector<std::string> modes;
    for (std::size_t m = 0; m < state.num_modes(); ++m) {
        if (m != i0 && m != i1) {
            modes.push_back(state.modes()[m]);
        }
    }
    if (modes.empty()) {
        throw std::invalid_argument("measure_pair needs at least one unmeasured mode; use pair_expectation");
    }
    std::vector<Term> terms;
    terms.reserve(state.num_terms());
    for (const Term& t : state.terms()) {
        Term out;
        out.weight = t.weight * factor_expectation(t.factors[i0], t.factors[i1], outcome, d_c);
        for (std::size_t m = 0; m < t.factors.size(); ++m) {
            if (m != i0 && m != i1) {
                out.factors.push_back(t.factors[m]);
            }
        }
        terms.push_back(std::move(out));
    }
    MultimodeOperator result(std::move(modes), std::move(terms));
    result.compress();
    return result;
}

double click_probability(const MultimodeOperator& state, const ClickPattern& pattern, double d_c) {
    std::array<std::size_t, 8> idx{};
    std::vector<bool> measured(state.num_modes(), false);
    for (std::size_t pair = 0; pair < 4; ++pair) {
        for (int port = 0; port < 2; ++port) {
            const std::size_t m = state.mode_index(detector_mode(pair, port));
            idx[2 * pair + static_cast<std::size_t>(port)] = m;
            measured[m] = true;
        }
    }
    cplx total = 0.0;
    for (const Term& t : state.terms()) {
        cplx v = t.weight;
        for (std::size_t pair = 0; pair < 4; ++pair) {
            v *= factor_expectation(t.factors[idx[2 * pair]], t.factors[idx[2 * pair + 1]],
                                    click_on(pattern.ports[pair]), d_c);
        }
        for (std::size_t m = 0; m < t.factors.size(); ++m) {
            if (!measured[m]) {
                v *= t.factors[m].trace();
            }
        }
        total += v;
    }
    return total.real();
}

}  // namespace qkdrep
