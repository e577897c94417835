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

#include "qkdrep/repeater/link.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qkdrep/components/butterfly.hpp"
#include "qkdrep/components/detection.hpp"
#include "qkdrep/components/sources.hpp"
#include "qkdrep/fock/fock.hpp"

namespace qkdrep {

namespace {

Matrix parity(std::size_t dim) {
    Matrix z(dim, dim);
    for (std::size_t n = 0; n < dim; ++n) {
        z(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    }
    return z;
}

// Z on the second mode of a two-mode dense operator.
Matrix flip_second(const Matrix& rho, std::size_t da, std::size_t db) {
    Matrix out = rho;
    for (std::size_t r = 0; r < da * db; ++r) {
        for (std::size_t c = 0; c < da * db; ++c) {
            if (((r % db) + (c % db)) % 2 == 1) {
                out(r, c) = -out(r, c);
            }
        }
    }
    return out;
}

struct Herald {
    Matrix rho;  // normalized, (first, second) ordering
    double prob = 0.0;
};

// Contracts left[(x y),(x' y')] and right[(z w),(z' w')] through the pair
// kernels acting on (y, z), keeping (x, w). A click on port 1 is corrected by
// a parity flip on w.
Herald herald(const Matrix& left, std::size_t dx, std::size_t dy, const Matrix& right, std::size_t dz,
              std::size_t dw, const ButterflyKernel& kernel) {
    // Move the measured mode to the column superindex on the left and to the
    // row superindex on the right.
    const Matrix l = realign(left, dx, dy);    // [(x x'),(y y')]
    const Matrix r = realign(right, dz, dw);   // [(z z'),(w w')]
    const Matrix out0 = realign_inverse(l * kernel(PairOutcome::kClick0) * r, dx, dw);
    const Matrix out1 = realign_inverse(l * kernel(PairOutcome::kClick1) * r, dx, dw);
    Herald h;
    h.prob = out0.trace().real() + out1.trace().real();
    h.rho = out0 + flip_second(out1, dx, dw);
    if (h.prob > 0.0) {
        h.rho *= 1.0 / h.prob;
    }
    return h;
}

MultimodeOperator as_link(const Matrix& rho, std::size_t dim) {
    return MultimodeOperator::from_dense(rho, {"A", "B"}, {dim, dim});
}

void require_level(const LinkState& left, const LinkState& right) {
    if (left.nesting_level != right.nesting_level) {
        throw NestingMismatchError("cannot swap links of nesting levels " + std::to_string(left.nesting_level) +
                                   " and " + std::to_string(right.nesting_level));
    }
    // The cyclic protocol doubles the span at every level, so both halves
    // must cover the same distance.
    if (std::abs(left.span - right.span) > 1e-9 * std::max(left.span, right.span)) {
        throw NestingMismatchError("cannot swap links of unequal spans " + std::to_string(left.span) + " and " +
                                   std::to_string(right.span) + " km");
    }
}

LinkState make_swapped(const LinkState& left, const LinkState& right, MultimodeOperator rho, double prob) {
    LinkState out;
    out.rho = std::move(rho);
    out.success_prob = prob;
    out.chain = left.chain;
    out.chain.push_back(prob);
    out.nesting_level = left.nesting_level + 1;
    out.span = left.span + right.span;
    out.eta_sps = left.eta_sps;
    return out;
}

LinkState normalized_link(MultimodeOperator rho, double prob, double L0, double eta_sps) {
    if (prob > 0.0) {
        rho.scale(1.0 / prob);
    }
    LinkState s;
    s.rho = std::move(rho);
    s.success_prob = prob;
    s.chain = {prob};
    s.nesting_level = 0;
    s.span = L0;
    s.eta_sps = eta_sps;
    return s;
}

}  // namespace

double LinkState::chain_product() const {
    return std::accumulate(chain.begin(), chain.end(), 1.0, std::multiplies<>());
}

double LinkState::vacuum_weight() const { return dense()(0, 0).real(); }

double LinkState::single_excitation_weight() const {
    const Matrix d = dense();
    const std::size_t dim = memory_dim();
    return d(1, 1).real() + d(dim, dim).real();
}

MultimodeOperator sps_node_state(const SystemParams& params, double eta_sps, const std::string& channel_mode,
                                 const std::string& memory_mode) {
    if (!(eta_sps >= 0.0 && eta_sps <= 1.0)) {
        throw ParamError("eta_sps must lie in [0, 1], got " + std::to_string(eta_sps));
    }
    const FockCutoff cut(params.sps_cutoff);
    MultimodeOperator node = tensor(MultimodeOperator::single(channel_mode, sps_source_state(params.p, cut)),
                                    MultimodeOperator::single(memory_mode, Matrix::unit(1, 0, 0)));
    // The transmitted output stays on the channel mode; the reflected one
    // goes to the memory.
    node = apply_beam_splitter(node, channel_mode, memory_mode, eta_sps);
    node = apply_loss(node, memory_mode, params.eta_w);
    return node;
}

LinkState elementary_link(const SystemParams& params, double L0, double eta_sps) {
    if (!(L0 > 0.0)) {
        throw ParamError("elementary link length must be positive");
    }
    if (params.p > 0.0 && params.sps_cutoff < 2) {
        throw TruncationError("cutoff too small for two-photon emission");
    }
    const MultimodeOperator node = sps_node_state(params, eta_sps, "c", "m");
    const Matrix sigma = node.densify();  // (channel, memory)
    const std::size_t d = node.dim("c");
    const double eta_t = channel_transmission(0.5 * L0, params) * params.eta_d;
    const ButterflyKernel kernel(d, d, eta_t, eta_t, params.herald_dark_count());
    // Node A's state is read as [(m_A c_A), ...] so that the measured channel
    // sits on the inner index; node B keeps (c_B, m_B) order.
    const std::vector<std::string> order = {"m", "c"};
    const Matrix sigma_a = reorder_modes(node, order).densify();
    const Herald h = herald(sigma_a, d, d, sigma, d, d, kernel);
    LinkState s = normalized_link(as_link(h.rho, d), 1.0, L0, eta_sps);
    s.success_prob = h.prob;
    s.chain = {h.prob};
    return s;
}

LinkState elementary_link_reference(const SystemParams& params, double L0, double eta_sps) {
    if (!(L0 > 0.0)) {
        throw ParamError("elementary link length must be positive");
    }
    const double eta_t = channel_transmission(0.5 * L0, params) * params.eta_d;
    const double dc = params.herald_dark_count();
    const MultimodeOperator joint =
        tensor(sps_node_state(params, eta_sps, "cA", "A"), sps_node_state(params, eta_sps, "cB", "B"));
    const MultimodeOperator out = butterfly_apply(joint, "cA", "cB", eta_t, eta_t, "x0", "x1");
    MultimodeOperator rho = measure_pair(out, "x0", "x1", PairOutcome::kClick0, dc);
    const MultimodeOperator branch1 = apply_local_unitary(measure_pair(out, "x0", "x1", PairOutcome::kClick1, dc),
                                                          "B", parity(rho.dim("B")));
    const double prob = trace(rho).real() + trace(branch1).real();
    rho.add(reorder_modes(branch1, rho.modes()));
    rho = reorder_modes(rho, std::vector<std::string>{"A", "B"});
    rho.compress();
    return normalized_link(std::move(rho), prob, L0, eta_sps);
}

LinkState swap_links(const LinkState& left, const LinkState& right, const SystemParams& params) {
    require_level(left, right);
    const std::size_t dl = left.memory_dim();
    const std::size_t dr = right.memory_dim();
    const double eta = params.eta_r * params.eta_d;
    if (dl != dr) {
        throw std::invalid_argument("swap_links expects equal memory dimensions");
    }
    const ButterflyKernel kernel(dl, dr, eta, eta, params.herald_dark_count());
    const Herald h = herald(left.dense(), dl, dl, right.dense(), dr, dr, kernel);
    return make_swapped(left, right, as_link(h.rho, dl), h.prob);
}

LinkState swap_links_reference(const LinkState& left, const LinkState& right, const SystemParams& params) {
    require_level(left, right);
    const double eta = params.eta_r * params.eta_d;
    const double dc = params.herald_dark_count();
    const MultimodeOperator joint = tensor(left.rho, rename_mode(rename_mode(right.rho, "A", "C"), "B", "D"));
    const MultimodeOperator out = butterfly_apply(joint, "B", "C", eta, eta, "x0", "x1");
    MultimodeOperator rho = measure_pair(out, "x0", "x1", PairOutcome::kClick0, dc);
    const MultimodeOperator branch1 = apply_local_unitary(measure_pair(out, "x0", "x1", PairOutcome::kClick1, dc),
                                                          "D", parity(rho.dim("D")));
    const double prob = trace(rho).real() + trace(branch1).real();
    rho.add(branch1);
    rho = rename_mode(rho, "D", "B");
    rho.compress();
    if (prob > 0.0) {
        rho.scale(1.0 / prob);
    }
    return make_swapped(left, right, std::move(rho), prob);
}

LinkState repeater_state(const SystemParams& params, int n, double L_rep, double eta_sps) {
    if (n < 0 || n > 2) {
        throw ParamError("nesting level must be 0, 1 or 2, got " + std::to_string(n));
    }
    LinkState s = elementary_link(params, L_rep / std::ldexp(1.0, n), eta_sps);
    for (int i = 0; i < n; ++i) {
        s = swap_links(s, s, params);
    }
    return s;
}

double bell_fidelity(const LinkState& state, int sign) {
    const Matrix d = state.dense();
    const std::size_t dim = state.memory_dim();
    const std::size_t i01 = 1;
    const std::size_t i10 = dim;
    const double s = sign >= 0 ? 1.0 : -1.0;
    return 0.5 * (d(i01, i01).real() + d(i10, i10).real() + s * 2.0 * d(i01, i10).real());
}

EntanglementRate entanglement_rate(const SystemParams& params, const LinkState& state) {
    EntanglementRate r;
    const double L = state.span;
    r.r_ent = state.chain_product() / (2.0 * L / params.c);
    r.n_qm = (1 << (state.nesting_level + 1)) * params.N;
    r.r_rep = r.n_qm * r.r_ent;
    r.validity = params.N * r.r_ent * L / params.c;
    r.valid = r.validity >= 10.0;
    if (!r.valid) {
        r.warning = "multi-memory rate formula used outside its regime: N R_ent L / c = " +
                    std::to_string(r.validity) + " (should be >> 1)";
    }
    return r;
}

}  // namespace qkdrep
