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

#include "qkdrep/sweep/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qkdrep/components/params_json.hpp"

namespace qkdrep {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = count;
            }
        }
    };
    const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

void SweepSpec::validate() const {
    if (grid.empty()) {
        throw ParamError("sweep grid must not be empty");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw ParamError("sweep grid must be strictly increasing");
        }
    }
    if (nesting_levels.empty()) {
        throw ParamError("sweep needs at least one nesting level");
    }
    for (int n : nesting_levels) {
        if (n < 0 || n > 2) {
            throw ParamError("nesting levels must be 0, 1 or 2");
        }
    }
    if (parameter == "L") {
        if (!(grid.front() > 2.0 * params.L_s)) {
            throw ParamError("distances must exceed 2 L_s");
        }
    } else if (parameter == "alpha") {
        if (!(grid.front() >= 0.0)) {
            throw ParamError("alpha grid must be non-negative");
        }
    }
    params.validate();
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    result.spec = spec;
    const std::size_t np = spec.grid.size();
    const std::size_t nl = spec.nesting_levels.size();
    std::vector<PointResult> flat(np * nl);
    parallel_for(np * nl, spec.threads, [&](std::size_t idx) {
        const int n = spec.nesting_levels[idx / np];
        const double x = spec.grid[idx % np];
        SystemParams p = spec.params;
        p.n = n;
        EvalOptions opt = spec.options;
        if (spec.parameter == "L") {
            p.L_rep = x - 2.0 * p.L_s;
        } else if (spec.parameter == "alpha") {
            p.mu = p.nu = x * x;
            opt.optimize_alpha = false;
        } else {
            nlohmann::json patch{{spec.parameter, x}};
            if (spec.parameter == "n" || spec.parameter == "N" || spec.parameter == "phase_samples" ||
                spec.parameter == "sps_cutoff") {
                patch[spec.parameter] = static_cast<int>(std::lround(x));
            }
            update_from_json(p, patch);
            p.validate();
        }
        flat[idx] = evaluate_point(p, spec.source, n, p.L_rep, opt);
        if (spec.parameter == "alpha") {
            flat[idx].alpha = x;
        }
    });
    for (std::size_t l = 0; l < nl; ++l) {
        SweepCurve c;
        c.n = spec.nesting_levels[l];
        c.points.assign(flat.begin() + static_cast<std::ptrdiff_t>(l * np),
                        flat.begin() + static_cast<std::ptrdiff_t>((l + 1) * np));
        for (std::size_t i = 0; i < np; ++i) {
            if (c.points[i].value > c.optimum_value) {
                c.optimum_value = c.points[i].value;
                c.optimum_x = spec.grid[i];
            }
        }
        result.curves.push_back(std::move(c));
    }
    return result;
}

SweepResult rate_vs_distance(SweepSpec spec) {
    spec.parameter = "L";
    return run_sweep(spec);
}

namespace {

PointResult at_distance(const SystemParams& params, int n, double L, SourceKind kind, const EvalOptions& options) {
    SystemParams p = params;
    p.n = n;
    p.L_rep = L - 2.0 * p.L_s;
    return evaluate_point(p, kind, n, p.L_rep, options);
}

double first_distance(const SystemParams& params, const DistanceOptions& dopt) {
    return 2.0 * params.L_s + dopt.resolution;
}

}  // namespace

double cutoff_distance(const SystemParams& params, int n, SourceKind kind, const EvalOptions& options,
                       const DistanceOptions& dopt) {
    const auto secure = [&](double L) { return at_distance(params, n, L, kind, options).value > 0.0; };
    // Coarse scan for the first insecure distance after a secure one.
    double last_secure = -1.0;
    double first_insecure = -1.0;
    for (double L = first_distance(params, dopt); L <= dopt.max_distance; L += dopt.step) {
        if (secure(L)) {
            last_secure = L;
        } else if (last_secure > 0.0) {
            first_insecure = L;
            break;
        }
    }
    if (last_secure < 0.0) {
        return 0.0;
    }
    if (first_insecure < 0.0) {
        return last_secure;
    }
    return bisect_boundary(secure, last_secure, first_insecure, dopt.resolution).first;
}

std::optional<double> crossover_distance(const SystemParams& params, int n_low, int n_high, SourceKind kind,
                                         const EvalOptions& options, const DistanceOptions& dopt) {
    if (n_high != n_low + 1) {
        throw ParamError("crossover needs consecutive nesting levels");
    }
    // True while the lower level is at least as good.
    const auto low_wins = [&](double L) {
        const double lo = at_distance(params, n_low, L, kind, options).value;
        const double hi = at_distance(params, n_high, L, kind, options).value;
        const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
        if (lo <= 0.0 && hi <= 0.0) {
            return true;
        }
        return (hi - lo) / scale < 1e-15;
    };
    double prev = first_distance(params, dopt);
    if (!low_wins(prev)) {
        return prev;
    }
    for (double L = prev + dopt.step; L <= dopt.max_distance; L += dopt.step) {
        if (!low_wins(L)) {
            return bisect_boundary(low_wins, prev, L, dopt.resolution).second;
        }
        prev = L;
    }
    return std::nullopt;
}

SpacingResult optimal_spacing(const SystemParams& params, double L, SourceKind kind, FixtureCache* cache) {
    SpacingResult best;
    EvalOptions opt;
    opt.normalization = Normalization::kPerMemory;
    opt.cache = cache;
    for (int n = 0; n <= 2; ++n) {
        const PointResult r = at_distance(params, n, L, kind, opt);
        if (r.value > best.rate) {
            best.rate = r.value;
            best.n_star = n;
            best.L0_star = (L - 2.0 * params.L_s) / std::ldexp(1.0, n);
            best.secure = true;
        }
    }
    return best;
}

SpacingProfile spacing_profile(const SystemParams& params, const std::vector<double>& distances, SourceKind kind,
                               int threads, FixtureCache* cache) {
    SpacingProfile prof;
    prof.distances = distances;
    prof.spacing.resize(distances.size());
    parallel_for(distances.size(), threads,
                 [&](std::size_t i) { prof.spacing[i] = optimal_spacing(params, distances[i], kind, cache); });
    double sum = 0.0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (prof.spacing[i].secure) {
            sum += prof.spacing[i].L0_star;
            ++prof.secure_points;
            prof.secure_max = distances[i];
        }
    }
    prof.mean_L0 = prof.secure_points > 0 ? sum / static_cast<double>(prof.secure_points) : 0.0;
    return prof;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) {
        throw ParamError("invalid grid specification");
    }
    std::vector<double> g;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
        g.push_back(lo + step * static_cast<double>(i));
    }
    return g;
}

}  // namespace qkdrep
