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

#include "qkdrep/fock/multimode.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>

namespace qkdrep {

namespace {

std::size_t hash_matrix(const Matrix& m, std::size_t seed) {
    const auto* bytes = reinterpret_cast<const char*>(m.data().data());
    const std::size_t h = std::hash<std::string_view>{}(std::string_view(bytes, m.size() * sizeof(cplx)));
    return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_factors(const std::vector<Matrix>& factors, std::size_t skip_a = SIZE_MAX,
                         std::size_t skip_b = SIZE_MAX) {
    std::size_t h = factors.size();
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i == skip_a || i == skip_b) {
            continue;
        }
        h = hash_matrix(factors[i], h);
    }
    return h;
}

bool same_factors(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::size_t skip_a = SIZE_MAX,
                  std::size_t skip_b = SIZE_MAX) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == skip_a || i == skip_b) {
            continue;
        }
        if (!(a[i] == b[i])) {
            return false;
        }
    }
    return true;
}

// Groups term indices whose factors agree outside the skipped modes.
std::vector<std::vector<std::size_t>> group_terms(const std::vector<Term>& terms, std::size_t skip_a,
                                                  std::size_t skip_b) {
    std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::size_t h = hash_factors(terms[t].factors, skip_a, skip_b);
        auto& bucket = buckets[h];
        bool placed = false;
        for (std::size_t g : bucket) {
            if (same_factors(terms[groups[g].front()].factors, terms[t].factors, skip_a, skip_b)) {
                groups[g].push_back(t);
                placed = true;
                break;
            }
        }
        if (!placed) {
            bucket.push_back(groups.size());
            groups.push_back({t});
        }
    }
    return groups;
}

}  // namespace

MultimodeOperator::MultimodeOperator(std::vector<std::string> modes, std::vector<Term> terms)
    : modes_(std::move(modes)), terms_(std::move(terms)) {
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        for (std::size_t j = i + 1; j < modes_.size(); ++j) {
            if (modes_[i] == modes_[j]) {
                throw std::invalid_argument("duplicate mode label '" + modes_[i] + "'");
            }
        }
    }
    for (const Term& t : terms_) {
        if (t.factors.size() != modes_.size()) {
            throw std::invalid_argument("term has " + std::to_string(t.factors.size()) + " factors for " +
                                        std::to_string(modes_.size()) + " modes");
        }
        for (std::size_t i = 0; i < modes_.size(); ++i) {
            if (!t.factors[i].is_square() || t.factors[i].rows() != terms_.front().factors[i].rows()) {
                throw std::invalid_argument("inconsistent factor dimension on mode '" + modes_[i] + "'");
            }
        }
    }
}

MultimodeOperator MultimodeOperator::single(std::string mode, Matrix op) {
    std::vector<Term> terms;
    terms.push_back(Term{1.0, {std::move(op)}});
    return MultimodeOperator({std::move(mode)}, std::move(terms));
}

MultimodeOperator MultimodeOperator::from_dense(const Matrix& joint, std::vector<std::string> modes,
                                                std::vector<std::size_t> dims) {
    if (modes.size() != dims.size() || modes.empty()) {
        throw std::invalid_argument("from_dense: modes and dims must be non-empty and of equal length");
    }
    const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (joint.rows() != total || joint.cols() != total) {
        throw std::invalid_argument("from_dense: joint matrix does not match mode dimensions");
    }
    const std::size_t last = dims.back();
    const std::size_t lead = total / last;
    std::vector<std::size_t> lead_dims(dims.begin(), dims.end() - 1);

    std::vector<Term> terms;
    for (std::size_t r = 0; r < lead; ++r) {
        for (std::size_t c = 0; c < lead; ++c) {
            Matrix block(last, last);
            for (std::size_t i = 0; i < last; ++i) {
                for (std::size_t j = 0; j < last; ++j) {
                    block(i, j) = joint(r * last + i, c * last + j);
                }
            }
            if (block.is_zero()) {
                continue;
            }
            Term t;
            t.factors.reserve(dims.size());
            // Decompose the leading multi-index into per-mode matrix units.
            std::size_t rr = r;
            std::size_t cc = c;
            std::vector<Matrix> units(lead_dims.size());
            for (std::size_t m = lead_dims.size(); m-- > 0;) {
                units[m] = Matrix::unit(lead_dims[m], rr % lead_dims[m], cc % lead_dims[m]);
                rr /= lead_dims[m];
                cc /= lead_dims[m];
            }
            t.factors = std::move(units);
            t.factors.push_back(std::move(block));
            terms.push_back(std::move(t));
        }
    }
    if (terms.empty()) {
        Term zero;
        for (std::size_t d : dims) {
            zero.factors.emplace_back(d, d);
        }
        zero.weight = 0.0;
        terms.push_back(std::move(zero));
    }
    return MultimodeOperator(std::move(modes), std::move(terms));
}

bool MultimodeOperator::has_mode(std::string_view mode) const {
    return std::find(modes_.begin(), modes_.end(), mode) != modes_.end();
}

std::size_t MultimodeOperator::mode_index(std::string_view mode) const {
    const auto it = std::find(modes_.begin(), modes_.end(), mode);
    if (it == modes_.end()) {
        throw UnknownModeError("unknown mode label '" + std::string(mode) + "'");
    }
    return static_cast<std::size_t>(it - modes_.begin());
}

std::size_t MultimodeOperator::dim(std::string_view mode) const {
    const std::size_t idx = mode_index(mode);
    return terms_.empty() ? 0 : terms_.front().factors[idx].rows();
}

std::vector<std::size_t> MultimodeOperator::dims() const {
    std::vector<std::size_t> d;
    if (terms_.empty()) {
        return d;
    }
    for (const Matrix& f : terms_.front().factors) {
        d.push_back(f.rows());
    }
    return d;
}

Matrix MultimodeOperator::densify() const {
    const auto d = dims();
    const std::size_t total = std::accumulate(d.begin(), d.end(), std::size_t{1}, std::multiplies<>());
    Matrix out(total, total);
    for (const Term& t : terms_) {
        Matrix prod = Matrix::identity(1);
        for (const Matrix& f : t.factors) {
            prod = kron(prod, f);
        }
        out.add_scaled(t.weight, prod);
    }
    return out;
}

MultimodeOperator& MultimodeOperator::compress(double drop_threshold) {
    std::vector<Term> merged;
    std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
    for (Term& t : terms_) {
        const std::size_t h = hash_factors(t.factors);
        auto& bucket = buckets[h];
        bool placed = false;
        for (std::size_t idx : bucket) {
            if (same_factors(merged[idx].factors, t.factors)) {
                merged[idx].weight += t.weight;
                placed = true;
                break;
            }
        }
        if (!placed) {
            bucket.push_back(merged.size());
            merged.push_back(std::move(t));
        }
    }
    std::vector<Term> kept;
    kept.reserve(merged.size());
    for (Term& t : merged) {
        double mag = std::abs(t.weight);
        for (const Matrix& f : t.factors) {
            mag *= f.frobenius_norm();
        }
        if (mag >= drop_threshold) {
            kept.push_back(std::move(t));
        }
    }
    if (kept.empty() && !merged.empty()) {
        Term zero = std::move(merged.front());
        zero.weight = 0.0;
        kept.push_back(std::move(zero));
    }
    terms_ = std::move(kept);
    return *this;
}

MultimodeOperator& MultimodeOperator::scale(cplx s) {
    for (Term& t : terms_) {
        t.weight *= s;
    }
    return *this;
}

MultimodeOperator& MultimodeOperator::add(const MultimodeOperator& other) {
    if (other.modes_ != modes_) {
        throw std::invalid_argument("cannot add operators over different mode lists");
    }
    if (!terms_.empty() && !other.terms_.empty() && other.dims() != dims()) {
        throw std::invalid_argument("cannot add operators with different mode dimensions");
    }
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

cplx trace(const MultimodeOperator& state) {
    cplx total = 0.0;
    for (const Term& t : state.terms()) {
        cplx v = t.weight;
        for (const Matrix& f : t.factors) {
            v *= f.trace();
        }
        total += v;
    }
    return total;
}

MultimodeOperator tensor(const MultimodeOperator& a, const MultimodeOperator& b) {
    for (const std::string& m : b.modes()) {
        if (a.has_mode(m)) {
            throw std::invalid_argument("tensor: mode '" + m + "' appears in both operands");
        }
    }
    std::vector<std::string> modes = a.modes();
    modes.insert(modes.end(), b.modes().begin(), b.modes().end());
    std::vector<Term> terms;
    terms.reserve(a.num_terms() * b.num_terms());
    for (const Term& ta : a.terms()) {
        for (const Term& tb : b.terms()) {
            Term t;
            t.weight = ta.weight * tb.weight;
            t.factors = ta.factors;
            t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
            terms.push_back(std::move(t));
        }
    }
    return MultimodeOperator(std::move(modes), std::move(terms));
}

MultimodeOperator partial_trace(const MultimodeOperator& state, std::span<const std::string> modes) {
    std::vector<bool> traced(state.num_modes(), false);
    for (const std::string& m : modes) {
        traced[state.mode_index(m)] = true;
    }
    std::vector<std::string> kept_modes;
    for (std::size_t i = 0; i < state.num_modes(); ++i) {
        if (!traced[i]) {
            kept_modes.push_back(state.modes()[i]);
        }
    }
    std::vector<Term> terms;
    for (const Term& t : state.terms()) {
        Term out;
        out.weight = t.weight;
        for (std::size_t i = 0; i < t.factors.size(); ++i) {
            if (traced[i]) {
                out.weight *= t.factors[i].trace();
            } else {
                out.factors.push_back(t.factors[i]);
            }
        }
        terms.push_back(std::move(out));
    }
    MultimodeOperator result(std::move(kept_modes), std::move(terms));
    if (result.num_modes() > 0) {
        result.compress(0.0);
    }
    return result;
}

MultimodeOperator apply_loss(const MultimodeOperator& state, std::string_view mode, double eta) {
    const std::size_t idx = state.mode_index(mode);
    std::vector<Term> terms = state.terms();
    for (Term& t : terms) {
        t.factors[idx] = apply_loss(t.factors[idx], eta);
    }
    return MultimodeOperator(state.modes(), std::move(terms));
}

MultimodeOperator apply_local_unitary(const MultimodeOperator& state, std::string_view mode, const Matrix& unitary) {
    const std::size_t idx = state.mode_index(mode);
    const Matrix udag = unitary.adjoint();
    std::vector<Term> terms = state.terms();
    for (Term& t : terms) {
        t.factors[idx] = unitary * t.factors[idx] * udag;
    }
    return MultimodeOperator(state.modes(), std::move(terms));
}

MultimodeOperator apply_beam_splitter(const MultimodeOperator& state, std::string_view mode_a,
                                      std::string_view mode_b, double transmissivity,
                                      BeamSplitterConvention convention) {
    const std::size_t ia = state.mode_index(mode_a);
    const std::size_t ib = state.mode_index(mode_b);
    if (ia == ib) {
        throw std::invalid_argument("beam splitter needs two distinct modes");
    }
    const std::size_t da = state.dim(mode_a);
    const std::size_t db = state.dim(mode_b);
    const std::size_t out_dim = da + db - 1;
    const Matrix u = beam_splitter_isometry(da, db, transmissivity, convention);
    const Matrix udag = u.adjoint();

    std::vector<Term> terms;
    for (const auto& group : group_terms(state.terms(), ia, ib)) {
        // Joint two-mode operator of the group, then U (.) U^+.
        Matrix joint(da * db, da * db);
        for (std::size_t t : group) {
            const Term& term = state.terms()[t];
            joint.add_scaled(term.weight, kron(term.factors[ia], term.factors[ib]));
        }
        const Matrix out = u * joint * udag;
        const Term& rep = state.terms()[group.front()];
        for (std::size_t p = 0; p < out_dim; ++p) {
            for (std::size_t pp = 0; pp < out_dim; ++pp) {
                Matrix block(out_dim, out_dim);
                for (std::size_t q = 0; q < out_dim; ++q) {
                    for (std::size_t qq = 0; qq < out_dim; ++qq) {
                        block(q, qq) = out(p * out_dim + q, pp * out_dim + qq);
                    }
                }
                if (block.max_abs() < kTermDropThreshold) {
                    continue;
                }
                Term t;
                t.weight = 1.0;
                t.factors = rep.factors;
                t.factors[ia] = Matrix::unit(out_dim, p, pp);
                t.factors[ib] = std::move(block);
                terms.push_back(std::move(t));
            }
        }
    }
    if (terms.empty()) {
        Term zero;
        zero.weight = 0.0;
        zero.factors = state.terms().front().factors;
        zero.factors[ia] = Matrix(out_dim, out_dim);
        zero.factors[ib] = Matrix(out_dim, out_dim);
        terms.push_back(std::move(zero));
    }
    MultimodeOperator result(state.modes(), std::move(terms));
    result.compress();
    return result;
}

MultimodeOperator rename_mode(const MultimodeOperator& state, std::string_view from, std::string to) {
    const std::size_t idx = state.mode_index(from);
    std::vector<std::string> modes = state.modes();
    modes[idx] = std::move(to);
    return MultimodeOperator(std::move(modes), state.terms());
}

MultimodeOperator pad_mode(const MultimodeOperator& state, std::string_view mode, std::size_t new_dim) {
    const std::size_t idx = state.mode_index(mode);
    std::vector<Term> terms = state.terms();
    for (Term& t : terms) {
        const Matrix& f = t.factors[idx];
        if (new_dim < f.rows()) {
            throw std::invalid_argument("pad_mode cannot shrink a mode");
        }
        Matrix g(new_dim, new_dim);
        for (std::size_t i = 0; i < f.rows(); ++i) {
            for (std::size_t j = 0; j < f.cols(); ++j) {
                g(i, j) = f(i, j);
            }
        }
        t.factors[idx] = std::move(g);
    }
    return MultimodeOperator(state.modes(), std::move(terms));
}

MultimodeOperator reorder_modes(const MultimodeOperator& state, std::span<const std::string> order) {
    if (order.size() != state.num_modes()) {
        throw std::invalid_argument("reorder_modes: order must list every mode exactly once");
    }
    std::vector<std::size_t> src;
    for (const std::string& m : order) {
        src.push_back(state.mode_index(m));
    }
    std::vector<Term> terms;
    for (const Term& t : state.terms()) {
        Term out;
        out.weight = t.weight;
        for (std::size_t s : src) {
            out.factors.push_back(t.factors[s]);
        }
        terms.push_back(std::move(out));
    }
    return MultimodeOperator(std::vector<std::string>(order.begin(), order.end()), std::move(terms));
}

}  // namespace qkdrep
