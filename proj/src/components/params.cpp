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

#include "qkdrep/components/params.hpp"

#include <cmath>
#include "qkdrep/components/params_json.hpp"

namespace qkdrep {

namespace {

void require_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ParamError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
    }
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ParamError(std::string(name) + " must be positive and finite, got " + std::to_string(v));
    }
}

const char* arm_name(ArmAssignment a) { return a == ArmAssignment::kTable ? "table" : "swapped"; }

ArmAssignment parse_arm(const std::string& s) {
    if (s == "table") {
        return ArmAssignment::kTable;
    }
    if (s == "swapped") {
        return ArmAssignment::kSwapped;
    }
    throw ParamError("arm_assignment must be 'table' or 'swapped', got '" + s + "'");
}

template <typename T>
T get_as(const nlohmann::json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParamError("parameter '" + key + "' has the wrong type");
    }
}

}  // namespace

const char* source_kind_name(SourceKind kind) {
    switch (kind) {
        case SourceKind::kSingle:
            return "single";
        case SourceKind::kSps:
            return "sps";
        case SourceKind::kCoherent:
            return "coherent";
    }
    return "unknown";
}

SourceKind parse_source_kind(const std::string& name) {
    if (name == "single") {
        return SourceKind::kSingle;
    }
    if (name == "sps") {
        return SourceKind::kSps;
    }
    if (name == "coherent" || name == "decoy") {
        return SourceKind::kCoherent;
    }
    throw ParamError("unknown source kind '" + name + "' (expected single, sps or coherent)");
}

void SystemParams::validate() const {
    require_unit(p, "p");
    require_unit(eta_w, "eta_w");
    require_unit(eta_r, "eta_r");
    require_unit(eta_d, "eta_d");
    require_unit(d_c, "d_c");
    if (!(mu >= 0.0) || !(nu >= 0.0) || !std::isfinite(mu) || !std::isfinite(nu)) {
        throw ParamError("mu and nu must be non-negative and finite");
    }
    require_positive(L_att, "L_att");
    require_positive(c, "c");
    require_positive(L_rep, "L_rep");
    require_positive(R_S, "R_S");
    if (!(L_s >= 0.0) || !std::isfinite(L_s)) {
        throw ParamError("L_s must be non-negative and finite");
    }
    if (n < 0 || n > 2) {
        throw ParamError("n must be 0, 1 or 2, got " + std::to_string(n));
    }
    if (N < 1) {
        throw ParamError("N must be at least 1, got " + std::to_string(N));
    }
    if (!(f >= 1.0)) {
        throw ParamError("f must be at least 1, got " + std::to_string(f));
    }
    if (eta_sps) {
        require_unit(*eta_sps, "eta_sps");
    }
    if (phase_samples < 2) {
        throw ParamError("phase_samples must be at least 2");
    }
    if (sps_cutoff < 2) {
        throw ParamError("sps_cutoff must be at least 2");
    }
    if (!(leakage_tolerance > 0.0 && leakage_tolerance < 1.0)) {
        throw ParamError("leakage_tolerance must lie in (0, 1)");
    }
}

double SystemParams::user_arm_efficiency() const {
    const double user = std::exp(-L_s / L_att) * eta_d;
    const double memory = eta_r * eta_d;
    return arm_assignment == ArmAssignment::kTable ? user : memory;
}

double SystemParams::memory_arm_efficiency() const {
    const double user = std::exp(-L_s / L_att) * eta_d;
    const double memory = eta_r * eta_d;
    return arm_assignment == ArmAssignment::kTable ? memory : user;
}

double channel_transmission(double l, const SystemParams& params) {
    if (!(l >= 0.0)) {
        throw ParamError("channel length must be non-negative, got " + std::to_string(l));
    }
    return std::exp(-l / params.L_att);
}

void to_json(nlohmann::json& j, const SystemParams& s) {
    j = nlohmann::json{
        {"p", s.p},
        {"mu", s.mu},
        {"nu", s.nu},
        {"eta_w", s.eta_w},
        {"eta_r", s.eta_r},
        {"eta_d", s.eta_d},
        {"d_c", s.d_c},
        {"L_att", s.L_att},
        {"c", s.c},
        {"L_s", s.L_s},
        {"L_rep", s.L_rep},
        {"n", s.n},
        {"N", s.N},
        {"f", s.f},
        {"R_S", s.R_S},
        {"arm_assignment", arm_name(s.arm_assignment)},
        {"herald_dark_counts", s.herald_dark_counts},
        {"neglect_double_emission", s.neglect_double_emission},
        {"phase_samples", s.phase_samples},
        {"sps_cutoff", s.sps_cutoff},
        {"leakage_tolerance", s.leakage_tolerance},
    };
    j["eta_sps"] = s.eta_sps ? nlohmann::json(*s.eta_sps) : nlohmann::json("optimize");
}

void update_from_json(SystemParams& s, const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ParamError("parameters must be a JSON object");
    }
    for (const auto& [key, v] : j.items()) {
        if (key == "p") {
            s.p = get_as<double>(v, key);
        } else if (key == "mu") {
            s.mu = get_as<double>(v, key);
        } else if (key == "nu") {
            s.nu = get_as<double>(v, key);
        } else if (key == "eta_w") {
            s.eta_w = get_as<double>(v, key);
        } else if (key == "eta_r") {
            s.eta_r = get_as<double>(v, key);
        } else if (key == "eta_d") {
            s.eta_d = get_as<double>(v, key);
        } else if (key == "d_c") {
            s.d_c = get_as<double>(v, key);
        } else if (key == "L_att") {
            s.L_att = get_as<double>(v, key);
        } else if (key == "c") {
            s.c = get_as<double>(v, key);
        } else if (key == "L_s") {
            s.L_s = get_as<double>(v, key);
        } else if (key == "L_rep") {
            s.L_rep = get_as<double>(v, key);
        } else if (key == "n") {
            s.n = get_as<int>(v, key);
        } else if (key == "N") {
            s.N = get_as<int>(v, key);
        } else if (key == "f") {
            s.f = get_as<double>(v, key);
        } else if (key == "R_S") {
            s.R_S = get_as<double>(v, key);
        } else if (key == "eta_sps") {
            if (v.is_null() || (v.is_string() && v.get<std::string>() == "optimize")) {
                s.eta_sps.reset();
            } else {
                s.eta_sps = get_as<double>(v, key);
            }
        } else if (key == "arm_assignment") {
            s.arm_assignment = parse_arm(get_as<std::string>(v, key));
        } else if (key == "herald_dark_counts") {
            s.herald_dark_counts = get_as<bool>(v, key);
        } else if (key == "neglect_double_emission") {
            s.neglect_double_emission = get_as<bool>(v, key);
        } else if (key == "phase_samples") {
            s.phase_samples = get_as<int>(v, key);
        } else if (key == "sps_cutoff") {
            s.sps_cutoff = get_as<int>(v, key);
        } else if (key == "leakage_tolerance") {
            s.leakage_tolerance = get_as<double>(v, key);
        } else {
            throw ParamError("unknown parameter '" + key + "'");
        }
    }
}

void set_param(SystemParams& s, const std::string& key, const std::string& value) {
    nlohmann::json v;
    if (value == "true" || value == "false") {
        v = value == "true";
    } else if (key == "eta_sps" && value == "optimize") {
        v = value;
    } else if (key == "arm_assignment") {
        v = value;
    } else {
        try {
            std::size_t used = 0;
            const double d = std::stod(value, &used);
            if (used != value.size()) {
                throw ParamError("cannot parse value '" + value + "' for parameter '" + key + "'");
            }
            if (key == "n" || key == "N" || key == "phase_samples" || key == "sps_cutoff") {
                if (d != std::floor(d)) {
                    throw ParamError("parameter '" + key + "' must be an integer");
                }
                v = static_cast<int>(d);
            } else {
                v = d;
            }
        } catch (const std::logic_error& e) {
            if (dynamic_cast<const ParamError*>(&e) != nullptr) {
                throw;
            }
            throw ParamError("cannot parse value '" + value + "' for parameter '" + key + "'");
        }
    }
    update_from_json(s, nlohmann::json{{key, v}});
}

}  // namespace qkdrep
