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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qkdrep/cli/commands.hpp"
#include "qkdrep/cli/config.hpp"
#include "qkdrep/cli/output.hpp"
#include "qkdrep/fock/fock.hpp"
#include "qkdrep/version.hpp"

using namespace qkdrep;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("qkdrep_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QKDREP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("numbers are printed with twelve significant digits") {
    CHECK(format_number(0.0) == "0.00000000000e+00");
    CHECK(format_number(1.0 / 3.0) == "3.33333333333e-01");
    CHECK(format_number(-12345.678) == "-1.23456780000e+04");
    CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("CSV tables carry version and configuration") {
    CsvTable t("demo", nlohmann::json{{"k", 1}});
    t.set_columns({"x", "y"});
    t.begin_block("first");
    t.add_row({1.0, 2.0});
    const std::string s = t.str();
    CHECK(s.rfind("# qkdrep " + std::string(kVersion) + ": demo\n", 0) == 0);
    CHECK(s.find("# config: {\"k\":1}") != std::string::npos);
    CHECK(s.find("# block: first\nx,y\n1.00000000000e+00,2.00000000000e+00\n") != std::string::npos);
    CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("configuration layering and validation") {
    RunConfig c;
    c.apply(nlohmann::json{{"L_rep", 250.0}, {"source", "decoy"}, {"nesting_levels", {0, 2}}});
    CHECK(c.params.L_rep == 250.0);
    CHECK(c.source == SourceKind::kCoherent);
    CHECK(c.nesting_levels == std::vector<int>{0, 2});
    c.apply_override("L_rep=300");
    c.apply_override("normalization=per_memory");
    c.apply_override("grid=[100,200]");
    CHECK(c.params.L_rep == 300.0);
    CHECK(c.normalization == Normalization::kPerMemory);
    CHECK(c.resolved_grid() == std::vector<double>{100.0, 200.0});
    CHECK_THROWS_WITH_AS(c.apply(nlohmann::json{{"typo_key", 1}}), doctest::Contains("typo_key"), ParamError);
    CHECK_THROWS_AS(c.apply_override("novalue"), ParamError);
    RunConfig bad;
    bad.params.eta_d = 2.0;
    CHECK_THROWS_AS(bad.validate(), ParamError);
}

TEST_CASE("missing sweep grid is reported by key") {
    RunConfig c;
    CHECK_THROWS_WITH_AS(c.resolved_grid(), doctest::Contains("grid"), ParamError);
    c.grid_start = 50.0;
    c.grid_stop = 150.0;
    CHECK_THROWS_WITH_AS(c.resolved_grid(), doctest::Contains("grid_step"), ParamError);
    c.grid_step = 50.0;
    CHECK(c.resolved_grid().size() == 3);
}

TEST_CASE("rate command: coherent source at 100 km with one nesting level") {
    RunConfig c;
    c.source = SourceKind::kCoherent;
    c.params.n = 1;
    c.params.L_rep = 100.0;
    c.out_dir = scratch("rate").string();
    std::ostringstream log;
    const Artifacts files = cmd_rate(c, nullptr, log);
    REQUIRE(files.size() == 1);
    const auto doc = nlohmann::json::parse(slurp(files[0]));
    CHECK(doc["qkdrep_version"] == kVersion);
    CHECK(doc["config"]["L_rep"] == 100.0);
    CHECK(doc["result"]["rate_per_pulse"].get<double>() > 0.0);
    CHECK(doc["result"]["secure"].get<bool>());
}

TEST_CASE("error classes map to exit codes") {
    std::ostringstream err;
    auto code_for = [&](auto thrower) {
        try {
            thrower();
        } catch (...) {
            return exit_code_for_current_exception(err);
        }
        return -1;
    };
    CHECK(code_for([] { throw ParamError("x"); }) == kExitConfig);
    CHECK(code_for([] { throw UnknownFigureError("x"); }) == kExitConfig);
    CHECK(code_for([] { throw TruncationError("x"); }) == kExitNumerical);
    CHECK(code_for([] { throw std::runtime_error("x"); }) == kExitFailure);
}

TEST_CASE("command-line front end: exit codes") {
    const fs::path dir = scratch("exit");
    const std::string out = " --out " + dir.string();
    CHECK(run_cli("rate --param d_c=0.5" + out) == 0);
    const auto doc = nlohmann::json::parse(slurp(dir / "rate.json"));
    CHECK(doc["result"]["rate_per_pulse"].get<double>() == 0.0);
    CHECK(run_cli("rate --param no_such_key=1" + out) == 2);
    CHECK(run_cli("rate --param eta_d=1.5" + out) == 2);
    CHECK(run_cli("sweep" + out) == 2);
    CHECK(run_cli("reproduce fig4" + out) == 2);
    CHECK(run_cli("bogus-command") == 2);
}

TEST_CASE("command-line front end: config files and byte-identical reruns") {
    const fs::path dir = scratch("determinism");
    const fs::path cfg = dir / "config.json";
    std::ofstream(cfg) << R"({"sweep_parameter": "L", "grid": [300, 900], "nesting_levels": [0, 1]})";
    const std::string base = "sweep --config " + cfg.string() + " --param L_s=4 --out ";
    REQUIRE(run_cli(base + (dir / "a").string()) == 0);
    REQUIRE(run_cli(base + (dir / "b").string() + " --threads 2") == 0);
    const std::string a = slurp(dir / "a" / "sweep.csv");
    CHECK_FALSE(a.empty());
    CHECK(a == slurp(dir / "b" / "sweep.csv"));
    CHECK(a.find("\"L_s\":4.0") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("fixture cache is written when requested") {
    const fs::path dir = scratch("fixtures");
    const fs::path fx = dir / "fixtures.json";
    REQUIRE(run_cli("rate --fixtures " + fx.string() + " --out " + dir.string()) == 0);
    CHECK(fs::exists(fx));
    const auto doc = nlohmann::json::parse(slurp(fx));
    CHECK(doc.contains("optima"));
    fs::remove_all(dir);
}

}  // TEST_SUITE
