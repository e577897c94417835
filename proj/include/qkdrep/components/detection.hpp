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

// Threshold detectors with dark counts, grouped in pairs behind each
// butterfly. Port 0 (x0) and port 1 (x1) are the two detectors of a pair.
//
// Each detector clicks with certainty when photons arrive and with
// probability d_c otherwise, independently of its partner. This gives
//   M_x0   = (1-d_c) [ (I-P0) (x) P0 + d_c P0 (x) P0 ]
//   M_x1   = (1-d_c) [ P0 (x) (I-P0) + d_c P0 (x) P0 ]
//   M_none = (1-d_c)^2 P0 (x) P0
//   M_both = the remainder, so that the four operators sum to the identity.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "qkdrep/fock/matrix.hpp"
#include "qkdrep/fock/multimode.hpp"

namespace qkdrep {

enum class PairOutcome { kClick0, kClick1, kBoth, kNone };

// Weight of outcome given n0 photons at x0 and n1 photons at x1.
double outcome_weight(PairOutcome outcome, std::size_t n0, std::size_t n1, double d_c);

// Dense diagonal POVM element on (x0, x1) with the given dimensions.
Matrix pair_povm(PairOutcome outcome, std::size_t dim0, std::size_t dim1, double d_c);

// The four detector pairs behind Alice's (r, s) and Bob's (u, v) rails.
inline constexpr std::array<const char*, 4> kPairNames = {"r", "s", "u", "v"};

// Name of the detector-input mode of a pair, e.g. "r0".
std::string detector_mode(std::size_t pair, int port);

// Exactly one click per pair; ports[i] is the clicked detector of pair i.
struct ClickPattern {
    std::array<int, 4> ports{};

    // Patterns enumerate as index = 8 r + 4 s + 2 u + v.
    static ClickPattern from_index(int index);
    int index() const { return 8 * ports[0] + 4 * ports[1] + 2 * ports[2] + ports[3]; }
    bool operator==(const ClickPattern&) const = default;
};

inline PairOutcome click_on(int port) { return port == 0 ? PairOutcome::kClick0 : PairOutcome::kClick1; }

// tr(rho M) where M acts on (mode0, mode1) and every other mode is traced out.
cplx pair_expectation(const MultimodeOperator& state, std::string_view mode0, std::string_view mode1,
                      PairOutcome outcome, double d_c);

// Unnormalized conditional state tr_{mode0,mode1}(rho M) on the remaining
// modes. The trace of the result is the outcome probability.
MultimodeOperator measure_pair(const MultimodeOperator& state, std::string_view mode0, std::string_view mode1,
                               PairOutcome outcome, double d_c);

// tr(rho M_r M_s M_u M_v) over the eight detector-input modes r0 ... v1.
double click_probability(const MultimodeOperator& state, const ClickPattern& pattern, double d_c);

}  // namespace qkdrep
