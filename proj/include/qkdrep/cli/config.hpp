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

// Run configuration: a flat JSON object mixing SystemParams fields with run
// settings. Precedence, lowest to highest: built-in defaults, --config file,
// --param key=value flags (in order), dedicated flags (--out, --fixtures,
// --threads).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qkdrep/components/params.hpp"
#include "qkdrep/sweep/optimize.hpp"

namespace qkdrep {

struct RunConfig {
    SystemParams params;

    // Run settings.
    SourceKind source = SourceKind::kSps;
    Normalization normalization = Normalization::kPerPulse;
    bool optimize_alpha = false;
    double alpha_lo = 0.3;
    double alpha_hi = 1.8;

    // sweep
    std::string sweep_parameter = "L";
    std::vector<double> grid;
    std::optional<double> grid_start;
    std::optional<double> grid_stop;
    std::optional<double> grid_step;
    std::vector<int> nesting_levels{0, 1, 2};

    // optimize: intensity | eta_sps | cutoff | crossover | spacing
    std::string optimize_target = "intensity";

    // reproduce recipes
    double distance_step = 50.0;
    double distance_max = 3000.0;
    double resolution = 10.0;

    // Monte-Carlo cross-check
    std::uint64_t seed = 12345;
    std::uint64_t mc_shots = 0;

    // Output and resources.
    std::string out_dir = ".";
    std::string fixtures;
    int threads = 1;

    // Throws ParamError naming the key on unknown keys or bad values.
    void apply(const nlohmann::json& j);
    void apply_override(const std::string& key_equals_value);
    void validate() const;

    // Grid for sweeps: explicit "grid" or grid_start/grid_stop/grid_step.
    // Throws ParamError ("missing required key ...") when neither is given.
    std::vector<double> resolved_grid() const;

    nlohmann::json to_json() const;
};

RunConfig load_config_file(const std::string& path);

}  // namespace qkdrep
