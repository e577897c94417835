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

// Persistent cache of repeater link states and optimized beam-splitter
// settings, so sweeps do not re-derive elementary links.
//
// File format (JSON):
//   {
//     "schema": "qkdrep-fixtures",
//     "version": 1,
//     "links":   { "<key>": { "dim": d, "re": [...], "im": [...], "chain": [...],
//                             "nesting_level": n, "span": km, "eta_sps": x } },
//     "optima":  { "<key>": eta_sps }
//   }
// Matrices are stored row-major over (A, B). Values are re-derivable, so the
// file is a cache, not a source of truth.

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "qkdrep/components/params.hpp"
#include "qkdrep/repeater/link.hpp"

namespace qkdrep {

class FixtureCache {
  public:
    static constexpr int kSchemaVersion = 1;

    FixtureCache() = default;
    // Loads the file when it exists; a missing file starts an empty cache.
    // Throws std::runtime_error on a malformed file or a version mismatch.
    explicit FixtureCache(std::filesystem::path path);

    static std::string link_key(const SystemParams& params, int n, double L_rep, double eta_sps);

    std::optional<LinkState> find_link(const std::string& key) const;
    void insert_link(const std::string& key, const LinkState& state);

    std::optional<double> find_optimum(const std::string& key) const;
    void insert_optimum(const std::string& key, double eta_sps);

    // Cached repeater_state.
    LinkState repeater_state(const SystemParams& params, int n, double L_rep, double eta_sps);

    std::size_t num_links() const;
    std::size_t num_optima() const;

    void save() const;
    void save(const std::filesystem::path& path) const;

  private:
    mutable std::mutex mutex_;
    std::filesystem::path path_;
    std::map<std::string, LinkState> links_;
    std::map<std::string, double> optima_;
};

}  // namespace qkdrep
