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

#include "qkdrep/sweep/optimize.hpp"

#include <cmath>
#include <stdexcept>

#include "qkdrep/components/params_json.hpp"
#include "qkdrep/repeater/link.hpp"

namespace qkdrep {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

std::string optimum_key(const SystemParams& params, SourceKind kind, int n, double L_rep, Normalization norm) {
    nlohmann::json j;
    to_json(j, params);
    return j.dump() + "|kind=" + source_kind_name(kind) + "|n=" + std::to_string(n) + "|L_rep=" +
           nlohmann::json(L_rep).dump() + "|norm=" + normalization_name(norm);
}

}  // namespace

Extremum golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(hi > lo)) {
        throw std::invalid_argument("golden-section interval must be non-degenerate");
    }
    Extremum e;
    double a = lo;
    double b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    e.evaluations = 2;
    while (b - a > tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
        ++e.evaluations;
    }
    if (f1 >= f2) {
        e.x = x1;
        e.value = f1;
    } else {
        e.x = x2;
        e.value = f2;
    }
    return e;
}

std::pair<double, double> bisect_boundary(const std::function<bool(double)>& pred, double lo, double hi, double tol) {
    if (!(hi > lo)) {
        throw std::invalid_argument("bisection interval must be non-degenerate");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

const char* normalization_name(Normalization n) { return n == Normalization::kPerPulse ? "per_pulse" : "per_memory"; }

Normalization parse_normalization(const std::string& name) {
    if (name == "per_pulse") {
        return Normalization::kPerPulse;
    }
    if (name == "per_memory") {
        return Normalization::kPerMemory;
    }
    throw ParamError("normalization must be 'per_pulse' or 'per_memory', got '" + name + "'");
}

double objective(const KeyRateReport& report, Normalization normalization) {
    return normalization == Normalization::kPerPulse ? report.r_per_pulse : report.r_per_memory;
}

std::vector<double> eta_scan_grid() {
    std::vector<double> g;
    for (int e = -60; e <= -10; e += 5) {
        g.push_back(std::pow(10.0, 0.1 * e));  // 1e-6 ... 0.1 in half decades
    }
    for (double v : {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}) {
        g.push_back(v);
    }
    return g;
}

PointResult evaluate_at_eta(const SystemParams& params, SourceKind kind, int n, double L_rep, double eta_sps,
                            FixtureCache* cache) {
    const LinkState link = cache != nullptr ? cache->repeater_state(params, n, L_rep, eta_sps)
                                            : repeater_state(params, n, L_rep, eta_sps);
    PointResult r;
    r.report = key_rate(params, kind, link);
    r.eta_sps = eta_sps;
    r.alpha = std::sqrt(params.mu);
    r.value = r.report.r_per_pulse;
    r.secure = r.report.r_per_pulse > 0.0;
    return r;
}

PointResult optimize_eta_sps(const SystemParams& params, SourceKind kind, int n, double L_rep,
                             Normalization normalization, FixtureCache* cache) {
    auto finish = [&](PointResult r) {
        r.value = objective(r.report, normalization);
        return r;
    };
    if (params.eta_sps) {
        return finish(evaluate_at_eta(params, kind, n, L_rep, *params.eta_sps, cache));
    }
    const std::string key = cache != nullptr ? optimum_key(params, kind, n, L_rep, normalization) : std::string();
    if (cache != nullptr) {
        if (auto eta = cache->find_optimum(key)) {
            return finish(evaluate_at_eta(params, kind, n, L_rep, *eta, cache));
        }
    }
    // Only the optimum is cached; intermediate links are not worth storing.
    const auto eval = [&](double eta) {
        return objective(evaluate_at_eta(params, kind, n, L_rep, eta, nullptr).report, normalization);
    };
    const std::vector<double> grid = eta_scan_grid();
    std::vector<double> values(grid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = eval(grid[i]);
        if (values[i] > values[best]) {
            best = i;
        }
    }
    double eta_star = grid[best];
    if (values[best] > 0.0) {
        const double lo = std::log10(grid[best == 0 ? 0 : best - 1]);
        const double hi = std::log10(grid[best + 1 < grid.size() ? best + 1 : best]);
        if (hi > lo) {
            const Extremum e =
                golden_section_max([&](double x) { return eval(std::pow(10.0, x)); }, lo, hi, 1e-3);
            if (e.value > values[best]) {
                eta_star = std::pow(10.0, e.x);
            }
        }
    }
    if (cache != nullptr) {
        cache->insert_optimum(key, eta_star);
    }
    return finish(evaluate_at_eta(params, kind, n, L_rep, eta_star, cache));
}

PointResult evaluate_point(const SystemParams& params, SourceKind kind, int n, double L_rep,
                           const EvalOptions& options) {
    if (kind == SourceKind::kCoherent && options.optimize_alpha) {
        SystemParams p = params;
        p.n = n;
        p.L_rep = L_rep;
        const IntensityOptimum opt = optimize_intensity(p, options.alpha_lo, options.alpha_hi, options.cache);
        PointResult r = opt.point;
        if (options.normalization != Normalization::kPerPulse) {
            p.mu = p.nu = opt.alpha_star * opt.alpha_star;
            r = optimize_eta_sps(p, kind, n, L_rep, options.normalization, options.cache);
            r.alpha = opt.alpha_star;
        }
        return r;
    }
    return optimize_eta_sps(params, kind, n, L_rep, options.normalization, options.cache);
}

IntensityOptimum optimize_intensity(const SystemParams& params, double lo, double hi, FixtureCache* cache,
                                    double tol) {
    if (!(lo > 0.0 && hi <= 3.0 && hi > lo)) {
        throw ParamError("intensity interval must lie in (0, 3]");
    }
    const auto eval = [&](double alpha) {
        SystemParams p = params;
        p.mu = p.nu = alpha * alpha;
        return optimize_eta_sps(p, SourceKind::kCoherent, params.n, params.L_rep, Normalization::kPerPulse, cache);
    };
    const Extremum e = golden_section_max([&](double a) { return eval(a).value; }, lo, hi, tol);
    IntensityOptimum out;
    out.point = eval(e.x);
    out.point.alpha = e.x;
    out.alpha_star = e.x;
    out.rate_star = out.point.value;
    out.secure = out.rate_star > 0.0;
    return out;
}

}  // namespace qkdrep
