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

// Entanglement distribution with single-photon sources and entanglement
// swapping between neighbouring links.
//
// Elementary link: each node's source emits (1-p)|1><1| + p|2><2| into a
// beam splitter of transmission eta_sps. The transmitted arm travels L0/2 to
// the middle station (loss eta_ch(L0/2) * eta_d at its detectors); the
// reflected arm is written into the memory with efficiency eta_w. The middle
// station interferes the two arms on a 50:50 beam splitter and heralds on
// exactly one click.
//
// Swap: the two inner memories are read out (eta_r * eta_d), interfered on a
// 50:50 beam splitter and heralded on exactly one click.
//
// In both cases a click on the second detector yields the first detector's
// state up to a parity flip exp(i pi n) on one remaining memory; that local
// correction is applied and both branches are kept.

#pragma once

#include <string>
#include <vector>

#include "qkdrep/components/params.hpp"
#include "qkdrep/fock/matrix.hpp"
#include "qkdrep/fock/multimode.hpp"

namespace qkdrep {

class NestingMismatchError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct LinkState {
    MultimodeOperator rho;       // normalized state over memory modes "A", "B"
    double success_prob = 0.0;   // heralding probability of the last stage
    std::vector<double> chain;   // P_S(L0), P_M^(1), ..., P_M^(n)
    int nesting_level = 0;
    double span = 0.0;           // km between the two memories
    double eta_sps = 0.0;

    std::size_t memory_dim() const { return rho.dim("A"); }
    Matrix dense() const { return rho.densify(); }
    double chain_product() const;
    // <00|rho|00>, the spurious vacuum component.
    double vacuum_weight() const;
    // Population with exactly one excitation across both memories.
    double single_excitation_weight() const;
};

// Per-node output of the source beam splitter over (channel, memory) with the
// writing efficiency already applied to the memory arm.
MultimodeOperator sps_node_state(const SystemParams& params, double eta_sps, const std::string& channel_mode,
                                 const std::string& memory_mode);

LinkState elementary_link(const SystemParams& params, double L0, double eta_sps);

// Elementary link evaluated entirely on term lists (butterfly_apply and
// measure_pair); used as an independent check of elementary_link.
LinkState elementary_link_reference(const SystemParams& params, double L0, double eta_sps);

// Throws NestingMismatchError when the nesting levels differ.
LinkState swap_links(const LinkState& left, const LinkState& right, const SystemParams& params);
LinkState swap_links_reference(const LinkState& left, const LinkState& right, const SystemParams& params);

// Elementary link at L0 = L_rep / 2^n followed by n symmetric swaps.
LinkState repeater_state(const SystemParams& params, int n, double L_rep, double eta_sps);

// Fidelity with (|01> + sign |10>)/sqrt(2).
double bell_fidelity(const LinkState& state, int sign);

struct EntanglementRate {
    double r_ent = 0.0;      // Hz per memory
    double r_rep = 0.0;      // Hz, all memories
    int n_qm = 0;            // 2^(n+1) N logical memories
    double validity = 0.0;   // N R_ent L_rep / c, should be >> 1
    bool valid = false;      // validity >= 10
    std::string warning;
};

EntanglementRate entanglement_rate(const SystemParams& params, const LinkState& state);

}  // namespace qkdrep
