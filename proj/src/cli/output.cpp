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

#include "qkdrep/cli/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "qkdrep/components/params_json.hpp"
#include "qkdrep/version.hpp"

namespace qkdrep {

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::scientific, 11);
    return std::string(buf.data(), res.ptr);
}

CsvTable::CsvTable(std::string title, nlohmann::json config) : title_(std::move(title)), config_(std::move(config)) {}

void CsvTable::set_columns(std::vector<std::string> columns) {
    columns_ = std::move(columns);
    header_written_ = false;
}

void CsvTable::write_column_row() {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        body_ += (i == 0 ? "" : ",") + columns_[i];
    }
    body_ += '\n';
    header_written_ = true;
}

void CsvTable::begin_block(const std::string& label) {
    if (!body_.empty()) {
        body_ += '\n';
    }
    body_ += "# block: " + label + '\n';
    write_column_row();
}

void CsvTable::add_comment(const std::string& text) {
    body_ += "# " + text + '\n';
}

void CsvTable::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) {
        throw std::invalid_argument("CSV row width does not match the column count");
    }
    if (!header_written_) {
        write_column_row();
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        body_ += (i == 0 ? "" : ",") + format_number(values[i]);
    }
    body_ += '\n';
}

std::string CsvTable::str() const {
    std::string out = "# qkdrep " + std::string(kVersion) + ": " + title_ + '\n';
    out += "# config: " + config_.dump() + '\n';
    return out + body_;
}

void CsvTable::write(const std::filesystem::path& path) const {
    write_text(path, str());
}

nlohmann::json report_to_json(const KeyRateReport& r) {
    nlohmann::json params;
    to_json(params, r.params);
    return {
        {"source", source_kind_name(r.source)},
        {"n", r.n},
        {"L_rep", r.L_rep},
        {"eta_sps", r.eta_sps},
        {"Y11z", r.Y11z},
        {"Q11z", r.Q11z},
        {"e11x", r.e11x},
        {"e11z", r.e11z},
        {"Qz", r.Qz},
        {"Ez", r.Ez},
        {"bracket_raw", r.bracket_raw},
        {"rate_per_pulse", r.r_per_pulse},
        {"rate_per_memory", r.r_per_memory},
        {"rate_source_limited", r.r_source_limited},
        {"rate_repeater_limited", r.r_repeater_limited},
        {"regime", regime_name(r.regime)},
        {"chain", r.chain},
        {"entanglement",
         {{"r_ent", r.entanglement.r_ent},
          {"r_rep", r.entanglement.r_rep},
          {"n_qm", r.entanglement.n_qm},
          {"validity", r.entanglement.validity},
          {"valid", r.entanglement.valid},
          {"warning", r.entanglement.warning}}},
        {"params", params},
    };
}

nlohmann::json point_to_json(const PointResult& p) {
    nlohmann::json j = report_to_json(p.report);
    j["objective"] = p.value;
    j["alpha"] = p.alpha;
    j["secure"] = p.secure;
    return j;
}

std::string render_report(const std::string& kind, const nlohmann::json& config, const nlohmann::json& payload) {
    const nlohmann::json doc{{"qkdrep_version", kVersion}, {"kind", kind}, {"config", config}, {"result", payload}};
    return doc.dump(2) + '\n';
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

}  // namespace qkdrep
