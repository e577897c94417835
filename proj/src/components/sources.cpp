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

#include "qkdrep/components/sources.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qkdrep {

SingleModeOperator sps_source_state(double p, FockCutoff cutoff) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("double-photon probability must lie in [0, 1], got " + std::to_string(p));
    }
    SingleModeOperator rho(cutoff.dim(), cutoff.dim());
    rho(1, 1) = 1.0 - p;
    rho(2, 2) = p;
    return rho;
}

std::vector<PhaseSample> phase_randomized_coherent(double mu, int num_phases, FockCutoff cutoff, double tolerance) {
    if (num_phases < 2) {
        throw std::invalid_argument("phase randomization needs at least 2 phase samples");
    }
    if (!(mu >= 0.0)) {
        throw std::invalid_argument("mean photon number must be non-negative");
    }
    std::vector<PhaseSample> out;
    out.reserve(static_cast<std::size_t>(num_phases));
    const double amp = std::sqrt(mu);
    for (int k = 0; k < num_phases; ++k) {
        const double phase = 2.0 * std::numbers::pi * k / num_phases;
        out.push_back({1.0 / num_phases, coherent_state(std::polar(amp, phase), cutoff, tolerance)});
    }
    return out;
}

SingleModeOperator mix(const std::vector<PhaseSample>& samples) {
    if (samples.empty()) {
        throw std::invalid_argument("cannot mix an empty sample list");
    }
    SingleModeOperator rho(samples.front().state.rows(), samples.front().state.cols());
    for (const auto& s : samples) {
        rho.add_scaled(s.weight, s.state);
    }
    return rho;
}

SingleModeOperator poisson_mixture(double mu, FockCutoff cutoff) {
    SingleModeOperator rho(cutoff.dim(), cutoff.dim());
    double total = 0.0;
    for (std::size_t n = 0; n < cutoff.dim(); ++n) {
        const int ni = static_cast<int>(n);
        const double w = mu == 0.0 ? (n == 0 ? 1.0 : 0.0) : std::exp(-mu + ni * std::log(mu) - log_factorial(ni));
        rho(n, n) = w;
        total += w;
    }
    rho *= 1.0 / total;
    return rho;
}

}  // namespace qkdrep
