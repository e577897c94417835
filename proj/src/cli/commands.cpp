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

#include "qkdrep/cli/commands.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "qkdrep/cli/output.hpp"
#include "qkdrep/components/params_json.hpp"
#include "qkdrep/encoder/encoder.hpp"
#include "qkdrep/fock/fock.hpp"
#include "qkdrep/fock/multimode.hpp"
#include "qkdrep/keyrate/monte_carlo.hpp"
#include "qkdrep/repeater/link.hpp"
#include "qkdrep/sweep/sweep.hpp"

namespace qkdrep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

EvalOptions eval_options(const RunConfig& c, FixtureCache* cache) {
    EvalOptions o;
    o.normalization = c.normalization;
    o.optimize_alpha = c.optimize_alpha;
    o.alpha_lo = c.alpha_lo;
    o.alpha_hi = c.alpha_hi;
    o.cache = cache;
    return o;
}

DistanceOptions distance_options(const RunConfig& c) {
    DistanceOptions d;
    d.resolution = c.resolution;
    d.max_distance = c.distance_max;
    return d;
}

// Total-distance grid shared by the distance recipes.
std::vector<double> distance_grid(const RunConfig& c) {
    const double first = std::ceil((2.0 * c.params.L_s + 1e-9) / c.distance_step) * c.distance_step;
    return linear_grid(first, c.distance_max, c.distance_step);
}

LinkState link_for(const SystemParams& p, double eta_sps, FixtureCache* cache) {
    return cache != nullptr ? cache->repeater_state(p, p.n, p.L_rep, eta_sps)
                            : repeater_state(p, p.n, p.L_rep, eta_sps);
}

std::filesystem::path emit(const RunConfig& c, const std::string& name, const std::string& text,
                           std::ostream& log) {
    const std::filesystem::path path = std::filesystem::path(c.out_dir) / name;
    write_text(path, text);
    log << "wrote " << path.string() << '\n';
    return path;
}

std::string level_label(const std::string& source, int n) {
    return "source=" + source + " n=" + std::to_string(n);
}

// Distance curves for both sources under one normalization.
std::string distance_figure(const RunConfig& base, FixtureCache* cache, Normalization normalization,
                            const std::string& title, const std::string& rate_column) {
    RunConfig c = base;
    c.normalization = normalization;
    const std::vector<double> grid = distance_grid(c);
    CsvTable csv(title, c.to_json());
    csv.set_columns({"L", rate_column, "eta_sps", "alpha"});
    for (SourceKind kind : {SourceKind::kSps, SourceKind::kCoherent}) {
        SweepSpec spec;
        spec.parameter = "L";
        spec.grid = grid;
        spec.params = c.params;
        spec.nesting_levels = c.nesting_levels;
        spec.source = kind;
        spec.options = eval_options(c, cache);
        spec.threads = c.threads;
        const SweepResult result = run_sweep(spec);
        for (const SweepCurve& curve : result.curves) {
            csv.begin_block(level_label(source_kind_name(kind), curve.n));
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const PointResult& pt = curve.points[i];
                csv.add_row({grid[i], pt.value, pt.eta_sps, kind == SourceKind::kCoherent ? pt.alpha : kNaN});
            }
        }
    }
    return csv.str();
}

std::string figure5(const RunConfig& base, FixtureCache* cache) {
    // Repeater-limited normalization R_QKD N_QM / R_S equals the per-pulse
    // bracket, so the objective is the per-pulse rate.
    RunConfig c = base;
    c.params.L_rep = 100.0;
    c.source = SourceKind::kCoherent;
    c.normalization = Normalization::kPerPulse;
    const std::vector<double> alphas = linear_grid(c.alpha_lo, c.alpha_hi, 0.05);
    // (a) dark-count variants at p = 1e-4; (b) double-photon variants at
    // d_c = 1e-9. At this span no key survives beyond p of about 1.6e-3.
    struct Variant {
        double d_c;
        double p;
    };
    const std::vector<Variant> variants{{1e-9, 1e-4}, {1e-6, 1e-4}, {1e-5, 1e-4}, {1e-9, 5e-4}, {1e-9, 1e-3}};
    CsvTable csv("secret key rate per pulse versus alpha", c.to_json());
    csv.set_columns({"alpha", "rate_per_pulse"});
    for (const Variant& v : variants) {
        SweepSpec spec;
        spec.parameter = "alpha";
        spec.grid = alphas;
        spec.params = c.params;
        spec.params.d_c = v.d_c;
        spec.params.p = v.p;
        spec.nesting_levels = {c.params.n};
        spec.source = SourceKind::kCoherent;
        spec.options = eval_options(c, cache);
        spec.threads = c.threads;
        const SweepResult result = run_sweep(spec);
        const SweepCurve& curve = result.curves.front();
        csv.begin_block("d_c=" + format_number(v.d_c) + " p=" + format_number(v.p));
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            csv.add_row({alphas[i], curve.points[i].value});
        }
        if (curve.optimum_x) {
            csv.add_comment("grid optimum alpha=" + format_number(*curve.optimum_x) +
                            " rate_per_pulse=" + format_number(curve.optimum_value));
        }
    }
    return csv.str();
}

std::string figure9a(const RunConfig& base, FixtureCache* cache) {
    RunConfig c = base;
    c.normalization = Normalization::kPerMemory;
    const std::vector<double> recall = linear_grid(0.3, 1.0, 0.05);
    std::vector<std::array<double, 2>> rows(recall.size());
    const EvalOptions opt = eval_options(c, cache);
    const DistanceOptions dopt = distance_options(c);
    parallel_for(recall.size(), c.threads, [&](std::size_t i) {
        SystemParams p = c.params;
        p.eta_r = recall[i];
        for (int k = 0; k < 2; ++k) {
            const auto x = crossover_distance(p, k, k + 1, c.source, opt, dopt);
            rows[i][static_cast<std::size_t>(k)] = x ? *x : kNaN;
        }
    });
    CsvTable csv("repeater-limited crossover distance versus recall efficiency", c.to_json());
    csv.set_columns({"eta_r", "crossover_0_1", "crossover_1_2"});
    for (std::size_t i = 0; i < recall.size(); ++i) {
        csv.add_row({recall[i], rows[i][0], rows[i][1]});
    }
    return csv.str();
}

std::string figure9b(const RunConfig& base, FixtureCache* cache) {
    RunConfig c = base;
    c.params.eta_r = 0.3;
    c.normalization = Normalization::kPerMemory;
    const SpacingProfile profile = spacing_profile(c.params, distance_grid(c), c.source, c.threads, cache);
    CsvTable csv("optimal node spacing versus distance", c.to_json());
    csv.set_columns({"L", "n_star", "L0_star", "rate_per_memory"});
    for (std::size_t i = 0; i < profile.distances.size(); ++i) {
        const SpacingResult& s = profile.spacing[i];
        csv.add_row({profile.distances[i], s.secure ? static_cast<double>(s.n_star) : kNaN,
                     s.secure ? s.L0_star : kNaN, s.rate});
    }
    csv.add_comment("mean L0 over secure distances=" + format_number(profile.mean_L0) +
                    " secure_points=" + std::to_string(profile.secure_points) +
                    " secure_max=" + format_number(profile.secure_max));
    return csv.str();
}

}  // namespace

Artifacts cmd_rate(const RunConfig& config, FixtureCache* cache, std::ostream& log) {
    config.validate();
    const SystemParams& p = config.params;
    const PointResult point = evaluate_point(p, config.source, p.n, p.L_rep, eval_options(config, cache));
    nlohmann::json payload = point_to_json(point);
    if (config.mc_shots > 0) {
        SystemParams q = p;
        if (config.source == SourceKind::kCoherent) {
            q.mu = q.nu = point.alpha * point.alpha;
        }
        const LinkState link = link_for(q, point.eta_sps, cache);
        const GammaTable analytic = source_gamma_z(q, config.source, link);
        const MonteCarloEstimate mc =
            monte_carlo_gamma_z(q, source_spec(config.source, q, false), source_spec(config.source, q, true), link,
                                link, config.mc_shots, config.seed);
        payload["monte_carlo_z"] = {
            {"shots", mc.shots},
            {"seed", config.seed},
            {"gamma", mc.gamma},
            {"gamma_c", mc.gamma_c},
            {"gamma_e", mc.gamma_e},
            {"sigma_gamma", mc.sigma_gamma},
            {"sigma_gamma_c", mc.sigma_gamma_c},
            {"sigma_gamma_e", mc.sigma_gamma_e},
            {"analytic_gamma", analytic.gamma},
            {"analytic_gamma_c", analytic.gamma_c},
            {"analytic_gamma_e", analytic.gamma_e},
        };
    }
    const std::string text = render_report("rate", config.to_json(), payload);
    log << text;
    return {emit(config, "rate.json", text, log)};
}

Artifacts cmd_sweep(const RunConfig& config, FixtureCache* cache, std::ostream& log) {
    config.validate();
    SweepSpec spec;
    spec.parameter = config.sweep_parameter;
    spec.grid = config.resolved_grid();
    spec.params = config.params;
    spec.nesting_levels = config.nesting_levels;
    spec.source = config.source;
    spec.options = eval_options(config, cache);
    spec.threads = config.threads;
    const SweepResult result = run_sweep(spec);
    CsvTable csv("sweep over " + spec.parameter, config.to_json());
    csv.set_columns({spec.parameter, "objective", "rate_per_pulse", "rate_per_memory", "eta_sps", "alpha", "Qz",
                     "Ez", "e11x"});
    for (const SweepCurve& curve : result.curves) {
        csv.begin_block(level_label(source_kind_name(spec.source), curve.n));
        for (std::size_t i = 0; i < spec.grid.size(); ++i) {
            const PointResult& pt = curve.points[i];
            const KeyRateReport& r = pt.report;
            const double alpha = spec.source == SourceKind::kCoherent ? pt.alpha : kNaN;
            csv.add_row({spec.grid[i], pt.value, r.r_per_pulse, r.r_per_memory, pt.eta_sps, alpha, r.Qz, r.Ez, r.e11x});
        }
    }
    return {emit(config, "sweep.csv", csv.str(), log)};
}

Artifacts cmd_optimize(const RunConfig& config, FixtureCache* cache, std::ostream& log) {
    config.validate();
    const SystemParams& p = config.params;
    const EvalOptions opt = eval_options(config, cache);
    const DistanceOptions dopt = distance_options(config);
    nlohmann::json payload{{"target", config.optimize_target}};
    const std::string& target = config.optimize_target;
    if (target == "intensity") {
        const IntensityOptimum o = optimize_intensity(p, config.alpha_lo, config.alpha_hi, cache);
        payload["alpha_star"] = o.alpha_star;
        payload["rate_star"] = o.rate_star;
        payload["secure"] = o.secure;
        payload["point"] = point_to_json(o.point);
    } else if (target == "eta_sps") {
        payload["point"] = point_to_json(optimize_eta_sps(p, config.source, p.n, p.L_rep, config.normalization, cache));
    } else if (target == "cutoff") {
        nlohmann::json rows = nlohmann::json::array();
        for (int n : config.nesting_levels) {
            rows.push_back({{"n", n}, {"cutoff_km", cutoff_distance(p, n, config.source, opt, dopt)}});
        }
        payload["cutoffs"] = rows;
    } else if (target == "crossover") {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i + 1 < config.nesting_levels.size(); ++i) {
            const int lo = config.nesting_levels[i];
            const int hi = config.nesting_levels[i + 1];
            const auto x = crossover_distance(p, lo, hi, config.source, opt, dopt);
            rows.push_back({{"from", lo}, {"to", hi}, {"crossover_km", x ? nlohmann::json(*x) : nlohmann::json()}});
        }
        payload["crossovers"] = rows;
    } else if (target == "spacing") {
        const SpacingResult s = optimal_spacing(p, p.total_distance(), config.source, cache);
        payload["L"] = p.total_distance();
        payload["n_star"] = s.n_star;
        payload["L0_star"] = s.L0_star;
        payload["rate_per_memory"] = s.rate;
        payload["secure"] = s.secure;
    } else {
        throw ParamError("unknown optimize_target '" + target +
                         "' (expected intensity, eta_sps, cutoff, crossover or spacing)");
    }
    const std::string text = render_report("optimize", config.to_json(), payload);
    log << text;
    return {emit(config, "optimize.json", text, log)};
}

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig5", "fig7", "fig8", "fig9"};
    return names;
}

Artifacts cmd_reproduce(const std::string& figure, const RunConfig& config, FixtureCache* cache,
                        std::ostream& log) {
    config.validate();
    if (figure == "fig5") {
        return {emit(config, "fig5.csv", figure5(config, cache), log)};
    }
    if (figure == "fig7") {
        return {emit(config, "fig7.csv",
                     distance_figure(config, cache, Normalization::kPerPulse,
                                     "secret key rate per pulse versus distance (source-limited)", "rate_per_pulse"),
                     log)};
    }
    if (figure == "fig8") {
        return {emit(config, "fig8.csv",
                     distance_figure(config, cache, Normalization::kPerMemory,
                                     "secret key rate per memory versus distance (repeater-limited)",
                                     "rate_per_memory"),
                     log)};
    }
    if (figure == "fig9") {
        return {emit(config, "fig9a.csv", figure9a(config, cache), log),
                emit(config, "fig9b.csv", figure9b(config, cache), log)};
    }
    throw UnknownFigureError("unknown figure '" + figure + "' (expected fig5, fig7, fig8 or fig9)");
}

int exit_code_for_current_exception(std::ostream& err) {
    try {
        throw;
    } catch (const TruncationError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const ParamError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const UnknownFigureError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace qkdrep
