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

// Multimode operators stored as weighted sums of per-mode tensor factors.
//
// A term is w * F_1 (x) F_2 (x) ... (x) F_M with one factor per mode label.
// Factors need not be Hermitian; Hermiticity of a physical state only holds
// for the sum. Mode-local channels act factor by factor, so the term count
// only changes under two-mode operations such as the beam splitter.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qkdrep/fock/fock.hpp"
#include "qkdrep/fock/matrix.hpp"

namespace qkdrep {

class UnknownModeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct Term {
    cplx weight{1.0, 0.0};
    std::vector<Matrix> factors;
};

inline constexpr double kTermDropThreshold = 1e-15;

class MultimodeOperator {
  public:
    MultimodeOperator() = default;
    MultimodeOperator(std::vector<std::string> modes, std::vector<Term> terms);

    static MultimodeOperator single(std::string mode, Matrix op);

    // Expands a dense joint operator (modes ordered as given, first mode most
    // significant) into matrix units on all but the last mode.
    static MultimodeOperator from_dense(const Matrix& joint, std::vector<std::string> modes,
                                        std::vector<std::size_t> dims);

    const std::vector<std::string>& modes() const { return modes_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t num_modes() const { return modes_.size(); }
    std::size_t num_terms() const { return terms_.size(); }

    bool has_mode(std::string_view mode) const;
    std::size_t mode_index(std::string_view mode) const;
    std::size_t dim(std::string_view mode) const;
    std::vector<std::size_t> dims() const;

    // Joint matrix in the order of modes().
    Matrix densify() const;

    // Sums terms whose factors are identical and drops terms whose
    // |weight| * prod ||factor||_F falls below drop_threshold.
    MultimodeOperator& compress(double drop_threshold = kTermDropThreshold);

    MultimodeOperator& scale(cplx s);
    MultimodeOperator& add(const MultimodeOperator& other);

  private:
    friend MultimodeOperator tensor(const MultimodeOperator& a, const MultimodeOperator& b);

    std::vector<std::string> modes_;
    std::vector<Term> terms_;
};

cplx trace(const MultimodeOperator& state);

// Throws std::invalid_argument when the mode sets overlap.
MultimodeOperator tensor(const MultimodeOperator& a, const MultimodeOperator& b);

MultimodeOperator partial_trace(const MultimodeOperator& state, std::span<const std::string> modes);

MultimodeOperator apply_loss(const MultimodeOperator& state, std::string_view mode, double eta);

// U rho U^+ for a unitary acting on one mode.
MultimodeOperator apply_local_unitary(const MultimodeOperator& state, std::string_view mode, const Matrix& unitary);

// Two-mode beam splitter with transmissivity t (see BeamSplitterConvention).
// Both modes are enlarged to dimension dim_a + dim_b - 1 so photon number is
// conserved exactly.
MultimodeOperator apply_beam_splitter(const MultimodeOperator& state, std::string_view mode_a,
                                      std::string_view mode_b, double transmissivity,
                                      BeamSplitterConvention convention = BeamSplitterConvention::kStandard);

MultimodeOperator rename_mode(const MultimodeOperator& state, std::string_view from, std::string to);

// Zero-pads a mode to a larger dimension.
MultimodeOperator pad_mode(const MultimodeOperator& state, std::string_view mode, std::size_t new_dim);

// Reorders modes; the new order must be a permutation of the current one.
MultimodeOperator reorder_modes(const MultimodeOperator& state, std::span<const std::string> order);

}  // namespace qkdrep
