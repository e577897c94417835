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

// One-dimensional search helpers and the per-point optimizers of the
// beam-splitter transmission eta_sps and the coherent intensity |alpha|.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qkdrep/components/params.hpp"
#include "qkdrep/keyrate/keyrate.hpp"
#include "qkdrep/repeater/fixture_cache.hpp"

namespace qkdrep {

struct Extremum {
    double x = 0.0;
    double value = 0.0;
    int evaluations = 0;
};

// Golden-section maximization of a unimodal function on [lo, hi] until the
// bracket is narrower than tol.
Extremum golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol);

// Bisection on a predicate that is true at lo and false at hi. Returns the
// final [lo, hi] bracket with hi - lo <= tol.
std::pair<double, double> bisect_boundary(const std::function<bool(double)>& pred, double lo, double hi, double tol);

// Rate normalization used both as optimization objective and for reporting.
//   kPerPulse:  the bracket of the key-rate bound (rate per transmitted pulse
//               in the source-limited regime)
//   kPerMemory: min(R_S, R_rep/2)/N_QM times the bracket, in Hz
enum class Normalization { kPerPulse, kPerMemory };

const char* normalization_name(Normalization n);
Normalization parse_normalization(const std::string& name);

double objective(const KeyRateReport& report, Normalization normalization);

struct EvalOptions {
    Normalization normalization = Normalization::kPerPulse;
    // Optimize |alpha| = |beta| per point for coherent sources; otherwise mu
    // and nu are taken from the parameters.
    bool optimize_alpha = false;
    double alpha_lo = 0.3;
    double alpha_hi = 1.8;
    FixtureCache* cache = nullptr;
};

struct PointResult {
    KeyRateReport report;
    double value = 0.0;  // objective under the chosen normalization
    double eta_sps = 0.0;
    double alpha = 0.0;
    bool secure = false;
};

// Key rate at (n, L_rep) with eta_sps taken from the parameters or optimized.
PointResult evaluate_at_eta(const SystemParams& params, SourceKind kind, int n, double L_rep, double eta_sps,
                            FixtureCache* cache = nullptr);

// Coarse logarithmic/linear scan of eta_sps followed by golden-section
// refinement (in log10 eta) around the best scan point.
PointResult optimize_eta_sps(const SystemParams& params, SourceKind kind, int n, double L_rep,
                             Normalization normalization, FixtureCache* cache = nullptr);

// Full point evaluation under the options (eta_sps and optionally alpha
// optimized).
PointResult evaluate_point(const SystemParams& params, SourceKind kind, int n, double L_rep,
                           const EvalOptions& options);

struct IntensityOptimum {
    double alpha_star = 0.0;
    double rate_star = 0.0;
    bool secure = false;
    PointResult point;
};

// Golden-section maximization of the per-pulse coherent rate over
// |alpha| = |beta| in [lo, hi] (tolerance 1e-3), with eta_sps optimized at
// every trial intensity. Uses params.n and params.L_rep.
IntensityOptimum optimize_intensity(const SystemParams& params, double lo, double hi,
                                    FixtureCache* cache = nullptr, double tol = 1e-3);

// The eta_sps scan grid.
std::vector<double> eta_scan_grid();

}  // namespace qkdrep
