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

// Closed-form click probabilities of a butterfly fed by a coherent state on
// the user arm and a number-state operator |k><k'| on the memory arm, as
// printed in the reference table, together with the numeric counterpart from
// the Fock engine.
//
// The printed expressions are evaluated verbatim. Two rows (|a2><a2| and
// |a1><a2|, |a2><a1|) are known not to match the numeric engine; the
// discrepancy report quantifies this rather than patching the formulas.

#pragma once

#include <array>
#include <string>
#include <vector>

namespace qkdrep {

enum class TableRow { kA0A0, kA1A1, kA2A2, kA1A0, kA0A1, kA1A2, kA2A1 };

inline constexpr std::array<TableRow, 7> kAllTableRows = {TableRow::kA0A0, TableRow::kA1A1, TableRow::kA2A2,
                                                          TableRow::kA1A0, TableRow::kA0A1, TableRow::kA1A2,
                                                          TableRow::kA2A1};

const char* row_label(TableRow row);
TableRow parse_row(const std::string& label);

// Memory-arm Fock indices (ket, bra) of a row.
std::array<int, 2> row_fock_indices(TableRow row);
bool row_is_diagonal(TableRow row);

// Closed form for detector x0 (port 0) or x1 (port 1). For port 1 the sign of
// the off-diagonal rows is flipped, as the table's caption prescribes. The
// coherent amplitude is alpha = sqrt(mu), taken real.
double butterfly_closed_form(TableRow row, double eta_user, double eta_memory, double mu, double d_c, int port = 0);

// Same quantity computed with butterfly_apply and the pair POVM on the term
// list; real part of the (real) result.
double butterfly_numeric(TableRow row, double eta_user, double eta_memory, double mu, double d_c, int port = 0,
                         double leakage_tolerance = 1e-12);

struct TableRowReport {
    TableRow row;
    double max_abs_diff = 0.0;
    // Grid point at which the largest deviation occurred.
    double eta_user = 0.0;
    double eta_memory = 0.0;
    double mu = 0.0;
    double d_c = 0.0;
    int port = 0;
    double closed_form = 0.0;
    double numeric = 0.0;
    std::size_t points = 0;
};

struct TableGrid {
    std::vector<double> eta_user;
    std::vector<double> eta_memory;
    std::vector<double> mu;
    std::vector<double> d_c;
    std::vector<int> ports{0, 1};
};

// Default grid: 5 x 5 x 5 over eta_user, eta_memory in [0, 1] and mu in
// [0, 2], at d_c in {0, 1e-9}.
TableGrid default_table_grid();

// Largest deviation per row over the grid.
std::vector<TableRowReport> closed_form_report(const TableGrid& grid);

// Plain-text rendering of the report, one line per row.
std::string format_table_report(const std::vector<TableRowReport>& report);

}  // namespace qkdrep
