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

// qkdrep command-line front end.
//
// Configuration precedence (lowest to highest): built-in defaults, the
// --config file, --param key=value overrides in the order given, then the
// dedicated --out, --fixtures and --threads flags.

#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qkdrep/cli/commands.hpp"
#include "qkdrep/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qkdrep: key rates for MDI-QKD over probabilistic quantum repeaters"};
    app.set_version_flag("--version", std::string(qkdrep::kVersion));
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path;
    std::string out_dir;
    std::string fixtures;
    std::vector<std::string> overrides;
    int threads = 0;
    app.add_option("--config", config_path, "flat JSON configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (default: current directory)");
    app.add_option("--param", overrides, "override a configuration key (key=value, repeatable)");
    app.add_option("--fixtures", fixtures, "repeater-state fixture cache (JSON)");
    app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);

    CLI::App* rate = app.add_subcommand("rate", "evaluate the key rate at one operating point");
    CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter over a grid");
    CLI::App* optimize = app.add_subcommand("optimize", "optimize intensity, eta_sps, cutoff, crossover or spacing");
    CLI::App* reproduce = app.add_subcommand("reproduce", "regenerate the data behind a figure");
    std::string figure;
    reproduce->add_option("figure", figure, "fig5 | fig7 | fig8 | fig9")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? qkdrep::kExitOk : qkdrep::kExitConfig;
    }

    try {
        qkdrep::RunConfig config = config_path.empty() ? qkdrep::RunConfig{} : qkdrep::load_config_file(config_path);
        for (const std::string& kv : overrides) {
            config.apply_override(kv);
        }
        if (!out_dir.empty()) {
            config.out_dir = out_dir;
        }
        if (!fixtures.empty()) {
            config.fixtures = fixtures;
        }
        if (threads > 0) {
            config.threads = threads;
        }
        config.validate();

        std::unique_ptr<qkdrep::FixtureCache> cache;
        if (!config.fixtures.empty()) {
            cache = std::make_unique<qkdrep::FixtureCache>(config.fixtures);
        }
        if (*rate) {
            qkdrep::cmd_rate(config, cache.get(), std::cout);
        } else if (*sweep) {
            qkdrep::cmd_sweep(config, cache.get(), std::cout);
        } else if (*optimize) {
            qkdrep::cmd_optimize(config, cache.get(), std::cout);
        } else if (*reproduce) {
            qkdrep::cmd_reproduce(figure, config, cache.get(), std::cout);
        }
        if (cache) {
            cache->save();
        }
    } catch (...) {
        return qkdrep::exit_code_for_current_exception(std::cerr);
    }
    return qkdrep::kExitOk;
}
