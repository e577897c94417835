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

#include "qkdrep/cli/config.hpp"

#include <fstream>
#include <set>

#include "qkdrep/components/params_json.hpp"
#include "qkdrep/sweep/sweep.hpp"

namespace qkdrep {

namespace {

const std::set<std::string>& param_keys() {
    static const std::set<std::string> keys = [] {
        nlohmann::json j;
        to_json(j, SystemParams{});
        std::set<std::string> k;
        for (const auto& [key, v] : j.items()) {
            k.insert(key);
        }
        return k;
    }();
    return keys;
}

template <typename T>
T as(const nlohmann::json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParamError("config key '" + key + "' has the wrong type");
    }
}

}  // namespace

void RunConfig::apply(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ParamError("configuration must be a flat JSON object");
    }
    nlohmann::json param_patch = nlohmann::json::object();
    for (const auto& [key, v] : j.items()) {
        if (param_keys().count(key) != 0) {
            param_patch[key] = v;
        } else if (key == "source") {
            source = parse_source_kind(as<std::string>(v, key));
        } else if (key == "normalization") {
            normalization = parse_normalization(as<std::string>(v, key));
        } else if (key == "optimize_alpha") {
            optimize_alpha = as<bool>(v, key);
        } else if (key == "alpha_lo") {
            alpha_lo = as<double>(v, key);
        } else if (key == "alpha_hi") {
            alpha_hi = as<double>(v, key);
        } else if (key == "sweep_parameter") {
            sweep_parameter = as<std::string>(v, key);
        } else if (key == "grid") {
            grid = as<std::vector<double>>(v, key);
        } else if (key == "grid_start") {
            grid_start = as<double>(v, key);
        } else if (key == "grid_stop") {
            grid_stop = as<double>(v, key);
        } else if (key == "grid_step") {
            grid_step = as<double>(v, key);
        } else if (key == "nesting_levels") {
            nesting_levels = v.is_array() ? as<std::vector<int>>(v, key) : std::vector<int>{as<int>(v, key)};
        } else if (key == "optimize_target") {
            optimize_target = as<std::string>(v, key);
        } else if (key == "distance_step") {
            distance_step = as<double>(v, key);
        } else if (key == "distance_max") {
            distance_max = as<double>(v, key);
        } else if (key == "resolution") {
            resolution = as<double>(v, key);
        } else if (key == "seed") {
            seed = as<std::uint64_t>(v, key);
        } else if (key == "mc_shots") {
            mc_shots = as<std::uint64_t>(v, key);
        } else if (key == "out") {
            out_dir = as<std::string>(v, key);
        } else if (key == "fixtures") {
            fixtures = as<std::string>(v, key);
        } else if (key == "threads") {
            threads = as<int>(v, key);
        } else {
            throw ParamError("unknown config key '" + key + "'");
        }
    }
    update_from_json(params, param_patch);
}

void RunConfig::apply_override(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ParamError("--param expects key=value, got '" + kv + "'");
    }
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    if (param_keys().count(key) != 0) {
        set_param(params, key, value);
        return;
    }
    // Run settings: try JSON first (numbers, booleans, arrays), then a string.
    nlohmann::json v = nlohmann::json::parse(value, nullptr, false);
    if (v.is_discarded()) {
        v = value;
    }
    apply(nlohmann::json{{key, v}});
}

void RunConfig::validate() const {
    params.validate();
    if (threads < 1) {
        throw ParamError("threads must be at least 1");
    }
    if (!(alpha_lo > 0.0 && alpha_hi <= 3.0 && alpha_hi > alpha_lo)) {
        throw ParamError("alpha_lo/alpha_hi must satisfy 0 < alpha_lo < alpha_hi <= 3");
    }
    if (!(distance_step > 0.0 && distance_max > 2.0 * params.L_s && resolution > 0.0)) {
        throw ParamError("distance_step, distance_max and resolution must be positive");
    }
    for (int n : nesting_levels) {
        if (n < 0 || n > 2) {
            throw ParamError("nesting_levels entries must be 0, 1 or 2");
        }
    }
}

std::vector<double> RunConfig::resolved_grid() const {
    if (!grid.empty()) {
        return grid;
    }
    if (!grid_start) {
        throw ParamError("missing required key 'grid' (or 'grid_start', 'grid_stop', 'grid_step')");
    }
    if (!grid_stop) {
        throw ParamError("missing required key 'grid_stop'");
    }
    if (!grid_step) {
        throw ParamError("missing required key 'grid_step'");
    }
    return linear_grid(*grid_start, *grid_stop, *grid_step);
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    qkdrep::to_json(j, params);
    j["source"] = source_kind_name(source);
    j["normalization"] = normalization_name(normalization);
    j["optimize_alpha"] = optimize_alpha;
    j["alpha_lo"] = alpha_lo;
    j["alpha_hi"] = alpha_hi;
    j["sweep_parameter"] = sweep_parameter;
    if (!grid.empty()) {
        j["grid"] = grid;
    }
    if (grid_start) {
        j["grid_start"] = *grid_start;
    }
    if (grid_stop) {
        j["grid_stop"] = *grid_stop;
    }
    if (grid_step) {
        j["grid_step"] = *grid_step;
    }
    j["nesting_levels"] = nesting_levels;
    j["optimize_target"] = optimize_target;
    j["distance_step"] = distance_step;
    j["distance_max"] = distance_max;
    j["resolution"] = resolution;
    j["seed"] = seed;
    j["mc_shots"] = mc_shots;
    return j;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParamError("cannot open config file '" + path + "'");
    }
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw ParamError("config file '" + path + "' is not valid JSON");
    }
    RunConfig c;
    c.apply(j);
    return c;
}

}  // namespace qkdrep
