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

// Photon sources: the imperfect single-photon source and the
// phase-randomized weak coherent source.

#pragma once

#include <vector>

#include "qkdrep/fock/fock.hpp"

namespace qkdrep {

// (1-p)|1><1| + p|2><2|.
SingleModeOperator sps_source_state(double p, FockCutoff cutoff);

struct PhaseSample {
    double weight;
    SingleModeOperator state;
};

// K coherent states |sqrt(mu) e^{2 pi i k/K}> with weight 1/K each.
std::vector<PhaseSample> phase_randomized_coherent(double mu, int num_phases, FockCutoff cutoff,
                                                   double tolerance = kDefaultLeakageTolerance);

// Weighted sum of the samples as a single density matrix.
SingleModeOperator mix(const std::vector<PhaseSample>& samples);

// Poisson mixture sum_n e^{-mu} mu^n/n! |n><n|, renormalized on the cutoff.
SingleModeOperator poisson_mixture(double mu, FockCutoff cutoff);

}  // namespace qkdrep
