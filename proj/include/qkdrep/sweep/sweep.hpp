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

// Sweeps over distance or any scalar parameter, and the derived distances:
// security cutoffs, nesting-level crossovers and optimal node spacing.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qkdrep/components/params.hpp"
#include "qkdrep/sweep/optimize.hpp"

namespace qkdrep {

// Runs fn(i) for i in [0, count) on a bounded pool of worker threads.
// Results are written by index, so the outcome does not depend on
// scheduling. threads <= 1 runs inline.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

struct SweepSpec {
    // "L" sweeps the total distance 2 L_s + L_rep; "alpha" sweeps
    // |alpha| = |beta|; anything else names a SystemParams field.
    std::string parameter = "L";
    std::vector<double> grid;
    SystemParams params;
    std::vector<int> nesting_levels{0, 1, 2};
    SourceKind source = SourceKind::kSps;
    EvalOptions options;
    int threads = 1;

    // Throws ParamError unless the grid is non-empty and strictly increasing.
    void validate() const;
};

struct SweepCurve {
    int n = 0;
    std::vector<PointResult> points;  // one per grid value
    std::optional<double> optimum_x;  // grid value with the largest objective
    double optimum_value = 0.0;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepCurve> curves;  // one per nesting level
};

SweepResult run_sweep(const SweepSpec& spec);

// Distance sweep; grid values are total distances L > 2 L_s.
SweepResult rate_vs_distance(SweepSpec spec);

struct DistanceOptions {
    double resolution = 10.0;  // km
    double step = 100.0;       // coarse scan step, km
    double max_distance = 6000.0;
};

// Largest total distance with a positive key rate for nesting level n
// (bisection to the requested resolution after a coarse scan). The rate is
// positive at the returned distance and not positive one resolution step
// beyond it. Returns 0 when no tested distance is secure.
double cutoff_distance(const SystemParams& params, int n, SourceKind kind, const EvalOptions& options,
                       const DistanceOptions& dopt = {});

// Smallest total distance beyond which level n_high beats n_low under the
// chosen normalization. Differences below 1e-15 (relative to the larger
// rate) count as ties and go to n_low.
std::optional<double> crossover_distance(const SystemParams& params, int n_low, int n_high, SourceKind kind,
                                         const EvalOptions& options, const DistanceOptions& dopt = {});

struct SpacingResult {
    int n_star = -1;
    double L0_star = 0.0;
    double rate = 0.0;
    bool secure = false;
};

// Nesting level maximizing the per-memory rate at total distance L, and the
// implied node spacing L0 = L_rep / 2^n.
SpacingResult optimal_spacing(const SystemParams& params, double L, SourceKind kind, FixtureCache* cache = nullptr);

struct SpacingProfile {
    std::vector<double> distances;
    std::vector<SpacingResult> spacing;
    double mean_L0 = 0.0;       // over the secure distances
    double secure_max = 0.0;    // largest secure distance on the grid
    std::size_t secure_points = 0;
};

SpacingProfile spacing_profile(const SystemParams& params, const std::vector<double>& distances, SourceKind kind,
                               int threads = 1, FixtureCache* cache = nullptr);

// Evenly spaced grid lo, lo+step, ..., <= hi.
std::vector<double> linear_grid(double lo, double hi, double step);

}  // namespace qkdrep
