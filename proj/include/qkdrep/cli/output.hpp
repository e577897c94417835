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

// Structured result emission: locale-independent CSV with a provenance
// header, and JSON reports for single-point runs.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qkdrep/keyrate/keyrate.hpp"
#include "qkdrep/sweep/optimize.hpp"
#include "qkdrep/sweep/sweep.hpp"

namespace qkdrep {

// Scientific notation with 12 significant digits, independent of locale.
std::string format_number(double x);

class CsvTable {
public:
    // The header comment records the artifact version and the resolved
    // configuration so every file is self-describing.
    CsvTable(std::string title, nlohmann::json config);

    void set_columns(std::vector<std::string> columns);
    // A block starts with a "# block: ..." comment followed by the column row.
    void begin_block(const std::string& label);
    void add_row(const std::vector<double>& values);
    void add_comment(const std::string& text);

    std::string str() const;
    void write(const std::filesystem::path& path) const;

private:
    std::string title_;
    nlohmann::json config_;
    std::vector<std::string> columns_;
    std::string body_;
    bool header_written_ = false;

    void write_column_row();
};

nlohmann::json report_to_json(const KeyRateReport& report);
nlohmann::json point_to_json(const PointResult& point);

// Wraps a JSON payload with version and configuration, pretty-printed.
std::string render_report(const std::string& kind, const nlohmann::json& config, const nlohmann::json& payload);

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace qkdrep
