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

#include "qkdrep/repeater/fixture_cache.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qkdrep {

namespace {

constexpr const char* kSchemaName = "qkdrep-fixtures";

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

nlohmann::json link_to_json(const LinkState& s) {
    const Matrix d = s.dense();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (const cplx& v : d.data()) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    return nlohmann::json{{"dim", s.memory_dim()},   {"re", re},          {"im", im},
                          {"chain", s.chain},         {"nesting_level", s.nesting_level},
                          {"span", s.span},           {"eta_sps", s.eta_sps}};
}

LinkState link_from_json(const nlohmann::json& j) {
    const auto dim = j.at("dim").get<std::size_t>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != dim * dim * dim * dim || im.size() != re.size()) {
        throw std::runtime_error("fixture link has inconsistent matrix size");
    }
    Matrix d(dim * dim, dim * dim);
    for (std::size_t i = 0; i < re.size(); ++i) {
        d.data()[i] = cplx(re[i], im[i]);
    }
    LinkState s;
    s.rho = MultimodeOperator::from_dense(d, {"A", "B"}, {dim, dim});
    s.chain = j.at("chain").get<std::vector<double>>();
    s.success_prob = s.chain.empty() ? 0.0 : s.chain.back();
    s.nesting_level = j.at("nesting_level").get<int>();
    s.span = j.at("span").get<double>();
    s.eta_sps = j.at("eta_sps").get<double>();
    return s;
}

}  // namespace

FixtureCache::FixtureCache(std::filesystem::path path) : path_(std::move(path)) {
    if (!std::filesystem::exists(path_)) {
        return;
    }
    std::ifstream in(path_);
    nlohmann::json j;
    try {
        in >> j;
        if (j.at("schema").get<std::string>() != kSchemaName) {
            throw std::runtime_error("not a fixture cache file");
        }
        if (j.at("version").get<int>() != kSchemaVersion) {
            throw std::runtime_error("fixture cache version " + std::to_string(j.at("version").get<int>()) +
                                     " is not supported (expected " + std::to_string(kSchemaVersion) + ")");
        }
        for (const auto& [key, v] : j.at("links").items()) {
            links_.emplace(key, link_from_json(v));
        }
        for (const auto& [key, v] : j.at("optima").items()) {
            optima_.emplace(key, v.get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed fixture cache " + path_.string() + ": " + e.what());
    }
}

std::string FixtureCache::link_key(const SystemParams& s, int n, double L_rep, double eta_sps) {
    return "p=" + fmt(s.p) + ";eta_w=" + fmt(s.eta_w) + ";eta_r=" + fmt(s.eta_r) + ";eta_d=" + fmt(s.eta_d) +
           ";d_h=" + fmt(s.herald_dark_count()) + ";L_att=" + fmt(s.L_att) + ";cut=" + std::to_string(s.sps_cutoff) +
           ";n=" + std::to_string(n) + ";L_rep=" + fmt(L_rep) + ";eta_sps=" + fmt(eta_sps);
}

std::optional<LinkState> FixtureCache::find_link(const std::string& key) const {
    std::lock_guard lock(mutex_);
    const auto it = links_.find(key);
    if (it == links_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void FixtureCache::insert_link(const std::string& key, const LinkState& state) {
    std::lock_guard lock(mutex_);
    links_.insert_or_assign(key, state);
}

std::optional<double> FixtureCache::find_optimum(const std::string& key) const {
    std::lock_guard lock(mutex_);
    const auto it = optima_.find(key);
    if (it == optima_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void FixtureCache::insert_optimum(const std::string& key, double eta_sps) {
    std::lock_guard lock(mutex_);
    optima_.insert_or_assign(key, eta_sps);
}

LinkState FixtureCache::repeater_state(const SystemParams& params, int n, double L_rep, double eta_sps) {
    const std::string key = link_key(params, n, L_rep, eta_sps);
    if (auto hit = find_link(key)) {
        return *hit;
    }
    LinkState s = qkdrep::repeater_state(params, n, L_rep, eta_sps);
    insert_link(key, s);
    return s;
}

std::size_t FixtureCache::num_links() const {
    std::lock_guard lock(mutex_);
    return links_.size();
}

std::size_t FixtureCache::num_optima() const {
    std::lock_guard lock(mutex_);
    return optima_.size();
}

void FixtureCache::save() const {
    if (path_.empty()) {
        throw std::runtime_error("fixture cache has no associated path");
    }
    save(path_);
}

void FixtureCache::save(const std::filesystem::path& path) const {
    nlohmann::json j;
    {
        std::lock_guard lock(mutex_);
        j["schema"] = kSchemaName;
        j["version"] = kSchemaVersion;
        j["links"] = nlohmann::json::object();
        for (const auto& [key, s] : links_) {
            j["links"][key] = link_to_json(s);
        }
        j["optima"] = optima_;
    }
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            throw std::runtime_error("cannot write fixture cache " + tmp.string());
        }
        out << j.dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace qkdrep
