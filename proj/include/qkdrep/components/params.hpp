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

// Hardware and protocol parameters shared by every stage of the simulator.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace qkdrep {

class ParamError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Which butterfly arm receives which efficiency. kTable gives the user arm
// eta_ch(L_s)*eta_d and the memory arm eta_r*eta_d; kSwapped exchanges them
// for sensitivity studies.
enum class ArmAssignment { kTable, kSwapped };

enum class SourceKind { kSingle, kSps, kCoherent };

const char* source_kind_name(SourceKind kind);
SourceKind parse_source_kind(const std::string& name);

struct SystemParams {
    // Sources.
    double p = 1e-4;   // double-photon probability of the imperfect SPS
    double mu = 1.0;   // Alice's coherent mean photon number
    double nu = 1.0;   // Bob's coherent mean photon number

    // Memories and detectors.
    double eta_w = 0.78;  // writing efficiency
    double eta_r = 0.87;  // reading efficiency
    double eta_d = 0.93;  // detector quantum efficiency
    double d_c = 1e-9;    // dark-count probability per pulse

    // Channel and geometry.
    double L_att = 25.0;  // attenuation length, km
    double c = 2e5;       // speed of light in fibre, km/s
    double L_s = 5.0;     // access segment length, km
    double L_rep = 100.0; // repeater span, km
    int n = 1;            // nesting level
    int N = 1;            // memories per node

    // Post-processing and clocks.
    double f = 1.16;      // error-correction inefficiency
    double R_S = 1e9;     // source repetition rate, Hz

    // Transmission of the entanglement-distribution beam splitter. When unset
    // it is optimized on the downstream key rate.
    std::optional<double> eta_sps;

    // Model switches.
    ArmAssignment arm_assignment = ArmAssignment::kTable;
    bool herald_dark_counts = true;        // include d_c at link and swap stations
    bool neglect_double_emission = false;  // drop the both-sources-emit-two term
    int phase_samples = 16;                // K of the phase-randomized coherent source
    int sps_cutoff = 4;                    // n_max for SPS-only computations
    double leakage_tolerance = 1e-12;      // coherent truncation tolerance

    // Throws ParamError naming the first offending field.
    void validate() const;

    // Efficiency of the user arm and the memory arm of each butterfly.
    double user_arm_efficiency() const;
    double memory_arm_efficiency() const;

    // Dark-count probability used at heralding stations.
    double herald_dark_count() const { return herald_dark_counts ? d_c : 0.0; }

    // Total user-to-user distance 2 L_s + L_rep.
    double total_distance() const { return 2.0 * L_s + L_rep; }
};

// exp(-l / L_att); throws ParamError for negative l.
double channel_transmission(double l, const SystemParams& params);

}  // namespace qkdrep
