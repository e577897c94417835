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

#include "qkdrep/components/closed_form.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qkdrep/components/butterfly.hpp"
#include "qkdrep/components/detection.hpp"
#include "qkdrep/fock/fock.hpp"
#include "qkdrep/fock/multimode.hpp"

namespace qkdrep {

const char* row_label(TableRow row) {
    switch (row) {
        case TableRow::kA0A0:
            return "|a0><a0|";
        case TableRow::kA1A1:
            return "|a1><a1|";
        case TableRow::kA2A2:
            return "|a2><a2|";
        case TableRow::kA1A0:
            return "|a1><a0|";
        case TableRow::kA0A1:
            return "|a0><a1|";
        case TableRow::kA1A2:
            return "|a1><a2|";
        case TableRow::kA2A1:
            return "|a2><a1|";
    }
    return "?";
}

TableRow parse_row(const std::string& label) {
    for (TableRow r : kAllTableRows) {
        if (label == row_label(r)) {
            return r;
        }
    }
    throw std::invalid_argument("unknown table row '" + label + "'");
}

std::array<int, 2> row_fock_indices(TableRow row) {
    switch (row) {
        case TableRow::kA0A0:
            return {0, 0};
        case TableRow::kA1A1:
            return {1, 1};
        case TableRow::kA2A2:
            return {2, 2};
        case TableRow::kA1A0:
            return {1, 0};
        case TableRow::kA0A1:
            return {0, 1};
        case TableRow::kA1A2:
            return {1, 2};
        case TableRow::kA2A1:
            return {2, 1};
    }
    throw std::invalid_argument("unknown table row");
}

bool row_is_diagonal(TableRow row) {
    const auto idx = row_fock_indices(row);
    return idx[0] == idx[1];
}

double butterfly_closed_form(TableRow row, double eta_user, double eta_memory, double mu, double d_c, int port) {
    if (port != 0 && port != 1) {
        throw std::invalid_argument("port must be 0 or 1");
    }
    const double ea = eta_user;
    const double eb = eta_memory;
    const double alpha = std::sqrt(mu);
    const double h = std::exp(-0.5 * ea * mu);  // e^{-eta_a mu / 2}
    const double e = std::exp(-ea * mu);        // e^{-eta_a mu}
    const double sign = (port == 1 && !row_is_diagonal(row)) ? -1.0 : 1.0;
    double value = 0.0;
    switch (row) {
        case TableRow::kA0A0:
            value = h * (1.0 - h) + d_c * e;
            break;
        case TableRow::kA1A1:
            value = 0.5 * eb * h * (1.0 + 0.5 * ea * mu) + h * (1.0 - eb) * (1.0 - h) +
                    d_c * (1.0 - eb) * (1.0 - e);
            break;
        case TableRow::kA2A2:
            value = 0.25 * eb * eb * h * (1.0 + 0.25 * ea * ea * mu * mu * (0.5 - 8.0 * h) + ea * mu) +
                    eb * h * (1.0 - eb) * (1.0 + 0.5 * ea * mu) + h * (1.0 - eb) * (1.0 - eb) * (1.0 - h) +
                    d_c * (0.5 * ea * ea * eb * eb * e * mu * mu + e * (1.0 - eb) * (1.0 - eb));
            break;
        case TableRow::kA1A0:
        case TableRow::kA0A1:
            value = 0.5 * std::sqrt(ea * eb) * alpha * h;
            break;
        case TableRow::kA1A2:
        case TableRow::kA2A1:
            value = std::sqrt(0.5 * ea * eb) * alpha * (0.5 * eb - 0.125 * ea * eb - 1.0);
            break;
    }
    return sign * (1.0 - d_c) * value;
}

namespace {

MultimodeOperator table_input(TableRow row, double mu, double tolerance) {
    const FockCutoff user_cut = cutoff_for_mean(mu, tolerance);
    const auto idx = row_fock_indices(row);
    const FockCutoff mem_cut(2);
    std::vector<Term> terms(1);
    terms[0].factors.push_back(coherent_state(std::sqrt(mu), user_cut, tolerance));
    terms[0].factors.push_back(Matrix::unit(mem_cut.dim(), static_cast<std::size_t>(idx[0]),
                                            static_cast<std::size_t>(idx[1])));
    return MultimodeOperator({"user", "memory"}, std::move(terms));
}

}  // namespace

double butterfly_numeric(TableRow row, double eta_user, double eta_memory, double mu, double d_c, int port,
                         double leakage_tolerance) {
    const MultimodeOperator out = butterfly_apply(table_input(row, mu, leakage_tolerance), "user", "memory",
                                                  eta_user, eta_memory, "x0", "x1");
    return pair_expectation(out, "x0", "x1", click_on(port), d_c).real();
}

TableGrid default_table_grid() {
    TableGrid g;
    for (int i = 0; i < 5; ++i) {
        g.eta_user.push_back(0.25 * i);
        g.eta_memory.push_back(0.25 * i);
        g.mu.push_back(0.5 * i);
    }
    g.d_c = {0.0, 1e-9};
    return g;
}

std::vector<TableRowReport> closed_form_report(const TableGrid& grid) {
    std::vector<TableRowReport> report;
    for (TableRow row : kAllTableRows) {
        TableRowReport r;
        r.row = row;
        for (double eu : grid.eta_user) {
            for (double em : grid.eta_memory) {
                for (double mu : grid.mu) {
                    // The channel output does not depend on d_c or the port,
                    // so it is computed once per grid point.
                    const MultimodeOperator out = butterfly_apply(table_input(row, mu, kDefaultLeakageTolerance),
                                                                  "user", "memory", eu, em, "x0", "x1");
                    for (double dc : grid.d_c) {
                        for (int port : grid.ports) {
                            const double num = pair_expectation(out, "x0", "x1", click_on(port), dc).real();
                            const double cf = butterfly_closed_form(row, eu, em, mu, dc, port);
                            const double diff = std::abs(num - cf);
                            ++r.points;
                            if (diff > r.max_abs_diff || r.points == 1) {
                                r.max_abs_diff = diff;
                                r.eta_user = eu;
                                r.eta_memory = em;
                                r.mu = mu;
                                r.d_c = dc;
                                r.port = port;
                                r.closed_form = cf;
                                r.numeric = num;
                            }
                        }
                    }
                }
            }
        }
        report.push_back(r);
    }
    return report;
}

std::string format_table_report(const std::vector<TableRowReport>& report) {
    std::string out;
    char buf[320];
    for (const auto& r : report) {
        std::snprintf(buf, sizeof buf,
                      "%-9s max|diff|=%.3e over %zu points; worst at eta_user=%.3g eta_memory=%.3g mu=%.3g "
                      "d_c=%.1e port=x%d (closed form %.9g, numeric %.9g)\n",
                      row_label(r.row), r.max_abs_diff, r.points, r.eta_user, r.eta_memory, r.mu, r.d_c, r.port,
                      r.closed_form, r.numeric);
        out += buf;
    }
    return out;
}

}  // namespace qkdrep
