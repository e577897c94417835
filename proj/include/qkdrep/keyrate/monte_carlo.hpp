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

// Shot-by-shot sampler of z-basis click patterns, used as an independent
// check of gamma_table.
//
// In the z basis every user state is diagonal in photon number, and the
// butterfly kernel then only sees the links' diagonal populations. Each shot
// therefore draws photon numbers for the users and both links, applies
// binomial loss on every arm, splits the surviving photons at each 50:50
// beam splitter according to |amplitude|^2 and adds independent dark counts
// per detector.

#pragma once

#include <cstdint>

#include "qkdrep/components/params.hpp"
#include "qkdrep/encoder/encoder.hpp"
#include "qkdrep/repeater/link.hpp"

namespace qkdrep {

struct MonteCarloEstimate {
    std::uint64_t shots = 0;
    double gamma = 0.0;
    double gamma_c = 0.0;
    double gamma_e = 0.0;
    // One-sigma binomial standard errors.
    double sigma_gamma = 0.0;
    double sigma_gamma_c = 0.0;
    double sigma_gamma_e = 0.0;
};

MonteCarloEstimate monte_carlo_gamma_z(const SystemParams& params, const SourceSpec& alice, const SourceSpec& bob,
                                       const LinkState& link1, const LinkState& link2, std::uint64_t shots,
                                       std::uint64_t seed);

}  // namespace qkdrep
