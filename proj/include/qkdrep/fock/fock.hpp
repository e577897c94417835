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

// Single-mode and two-mode building blocks in a truncated Fock basis.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdrep/fock/matrix.hpp"

namespace qkdrep {

using SingleModeOperator = Matrix;

inline constexpr double kDefaultLeakageTolerance = 1e-12;

// Raised when a photon-number truncation cannot represent a state within the
// configured leakage tolerance.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Per-mode photon-number truncation; the mode dimension is n_max + 1.
class FockCutoff {
  public:
    explicit FockCutoff(int n_max);

    int n_max() const { return n_max_; }
    std::size_t dim() const { return static_cast<std::size_t>(n_max_) + 1; }

    static FockCutoff from_dim(std::size_t dim) { return FockCutoff(static_cast<int>(dim) - 1); }

  private:
    int n_max_;
};

// Sign of the cross-coupling in the beam-splitter transformation:
//   kStandard: a+ -> sqrt(t) a+ + sqrt(1-t) b+,  b+ -> sqrt(t) b+ - sqrt(1-t) a+
//   kFlipped:  a+ -> sqrt(t) a+ - sqrt(1-t) b+,  b+ -> sqrt(t) b+ + sqrt(1-t) a+
// Click statistics are identical under either choice.
enum class BeamSplitterConvention { kStandard, kFlipped };

SingleModeOperator number_state(int n, FockCutoff cutoff);

// Poisson mass beyond n_max for mean photon number mu.
double poisson_tail(double mean, int n_max);

// Smallest cutoff (at least 2) whose Poisson tail at the given mean is below
// tolerance.
FockCutoff cutoff_for_mean(double mean, double tolerance = kDefaultLeakageTolerance);

// <n|alpha> for n = 0..n_max, renormalized to unit norm. Throws
// TruncationError when the discarded mass exceeds tolerance.
std::vector<cplx> coherent_amplitudes(cplx alpha, FockCutoff cutoff,
                                      double tolerance = kDefaultLeakageTolerance);

SingleModeOperator coherent_state(cplx alpha, FockCutoff cutoff,
                                  double tolerance = kDefaultLeakageTolerance);

double mean_photon_number(const SingleModeOperator& rho);

// Diagonal phase shifter exp(i phi n).
Matrix phase_shift(std::size_t dim, double phi);

// <p, i+k-p | U | i, k> for p = 0..i+k.
std::vector<double> beam_splitter_column(int i, int k, double transmissivity,
                                         BeamSplitterConvention convention = BeamSplitterConvention::kStandard);

// Two-mode beam-splitter isometry from the (da x db) input space into the
// photon-number-complete output space of dimension (da+db-1)^2. Row index is
// p*(da+db-1)+q, column index i*db+k.
Matrix beam_splitter_isometry(std::size_t dim_a, std::size_t dim_b, double transmissivity,
                              BeamSplitterConvention convention = BeamSplitterConvention::kStandard);

// Kraus operators of the pure-loss channel with transmission eta.
std::vector<Matrix> loss_kraus(std::size_t dim, double eta);

SingleModeOperator apply_loss(const SingleModeOperator& rho, double eta);

double binomial(int n, int k);
double log_factorial(int n);

}  // namespace qkdrep
