// Copyright 2026 The cvforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef _CVFORGE_PIPELINE_H
#define _CVFORGE_PIPELINE_H

#include <string>
#include <vector>

#include "cvforge/gaussian.h"
#include "cvforge/graph.h"
#include "cvforge/lattice.h"
#include "cvforge/trace.h"

namespace cvforge {

enum class PipelineKind { kOneD, kThreeD };

std::string to_string(PipelineKind kind);

/// One squeezer plus its delay line.
struct NopaSettings {
    Nopa id = Nopa::kN1;
    /// Pump at 2 w0 + d * fsr; signal line n pairs with idler line d - n.
    int pump_offset = 0;
    /// Strength of the difference-x correlation (x-type nullifiers).
    double r_signal = 0;
    /// Strength of the sum-p correlation (p-type nullifiers).
    double r_idler = 0;
    /// Phase picked up by the delayed idler before it meets the next signal.
    double delay_phase = 0;
};

struct PipelineConfig {
    PipelineKind kind = PipelineKind::kOneD;
    int n_max = 1;
    int n_bins = 4;
    LatticeMetadata metadata;
    std::vector<NopaSettings> nopas;

    /// One squeezer, d = 0, delay phase pi.
    static PipelineConfig one_d(int n_max, int n_bins, double r);
    /// N1 with d = +1 and delay phase pi, N2 with d = -1 and delay phase 0.
    static PipelineConfig three_d(int n_max, int n_bins, double r);

    /// Copy with every squeezer set to strength r.
    PipelineConfig with_r(double r) const;
    LatticeConfig lattice() const;
    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

struct PipelineResult {
    GaussianState state;
    PipelineTrace trace;

    const ModeRegistry &registry() const {
        return state.registry();
    }
};

/// Checkpoint recorded after the delay lines and before any beamsplitter.
inline constexpr const char *kPreBeamsplitter = "pre_beamsplitter";

/// Registry plus trace without running the state update.
struct PipelineProgram {
    ModeRegistry registry;
    PipelineTrace trace;
};

PipelineProgram program_1d(const PipelineConfig &cfg);
PipelineProgram program_3d(const PipelineConfig &cfg);

PipelineResult build_1d(const PipelineConfig &cfg);
PipelineResult build_3d(const PipelineConfig &cfg);
PipelineResult build(const PipelineConfig &cfg);

/// The nullifier families that certify the state of this pipeline kind.
NullifierSet pipeline_nullifiers(const PipelineConfig &cfg, const ModeRegistry &registry);

/// Squeezing in dB for parameter r: -10 log10(e^{-2r}) = 20 r / ln 10.
double squeezing_db(double r);

struct VarianceRow {
    double r = 0;
    double db = 0;
    std::string family;
    int k = 0;
    double variance = 0;
    double bound = 1;
};

struct VarianceTable {
    std::vector<VarianceRow> rows;

    /// Header `r,db,family,k,variance,bound`; family carries the rail as "x[rail=n]".
    std::string to_csv() const;
};

/// Rebuilds the pipeline at every r of the grid and evaluates all nullifiers.
/// Grid points are spread over up to `threads` workers (0 = worker_count()).
VarianceTable sweep(const PipelineConfig &cfg, const std::vector<double> &r_grid, size_t threads = 0);

}  // namespace cvforge

#endif
