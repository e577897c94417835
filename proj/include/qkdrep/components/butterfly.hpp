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

// The butterfly module: a lossy user arm and a lossy memory arm meeting on a
// 50:50 beam splitter whose outputs feed one detector pair.
//
// The user enters port a and the memory enters port b of the beam splitter.
// Detector x0 sits on output b and x1 on output a.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "qkdrep/components/detection.hpp"
#include "qkdrep/fock/fock.hpp"
#include "qkdrep/fock/matrix.hpp"
#include "qkdrep/fock/multimode.hpp"

namespace qkdrep {

// Applies the butterfly channel on the term list. The memory mode's slot is
// renamed to port0_label (x0) and the user mode's slot to port1_label (x1).
MultimodeOperator butterfly_apply(const MultimodeOperator& state, std::string_view user_mode,
                                  std::string_view memory_mode, double eta_user, double eta_memory,
                                  std::string port0_label, std::string port1_label,
                                  BeamSplitterConvention convention = BeamSplitterConvention::kStandard);

// Transfer tensor of the butterfly followed by one pair outcome:
//   K[(i i'), (k k')] = tr( M B( |i><i'| (x) |k><k'| ) )
// with i, i' indexing the user mode and k, k' the memory mode. Since M is
// diagonal and the beam splitter conserves photon number, only entries with
// i + k = i' + k' are non-zero.
class ButterflyKernel {
  public:
    ButterflyKernel(std::size_t dim_user, std::size_t dim_memory, double eta_user, double eta_memory, double d_c,
                    BeamSplitterConvention convention = BeamSplitterConvention::kStandard);

    std::size_t dim_user() const { return dim_user_; }
    std::size_t dim_memory() const { return dim_memory_; }

    // (dim_user^2) x (dim_memory^2) matrix for one outcome.
    const Matrix& operator()(PairOutcome outcome) const { return kernels_[static_cast<std::size_t>(outcome)]; }

    // tr(M B(user_op (x) memory_op)).
    cplx expectation(PairOutcome outcome, const Matrix& user_op, const Matrix& memory_op) const;

  private:
    std::size_t dim_user_;
    std::size_t dim_memory_;
    std::array<Matrix, 4> kernels_;
};

}  // namespace qkdrep
