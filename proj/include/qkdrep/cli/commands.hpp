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

// Experiment subcommands and figure-reproduction recipes. Each command writes
// its artifacts under RunConfig::out_dir and returns the paths it wrote.

#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdrep/cli/config.hpp"
#include "qkdrep/repeater/fixture_cache.hpp"

namespace qkdrep {

class UnknownFigureError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

using Artifacts = std::vector<std::filesystem::path>;

// Single-point evaluation; also prints the JSON report to `log`.
Artifacts cmd_rate(const RunConfig& config, FixtureCache* cache, std::ostream& log);
Artifacts cmd_sweep(const RunConfig& config, FixtureCache* cache, std::ostream& log);
Artifacts cmd_optimize(const RunConfig& config, FixtureCache* cache, std::ostream& log);
// figure: fig5 | fig7 | fig8 | fig9.
Artifacts cmd_reproduce(const std::string& figure, const RunConfig& config, FixtureCache* cache,
                        std::ostream& log);

const std::vector<std::string>& figure_names();

// Maps the exception currently being handled to an exit code.
int exit_code_for_current_exception(std::ostream& err);

}  // namespace qkdrep
