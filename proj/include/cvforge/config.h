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


#ifndef _CVFORGE_CONFIG_H
#define _CVFORGE_CONFIG_H

#include <cstdint>
#include <json.hpp>
#include <stdexcept>
#include <string>

#include "cvforge/pipeline.h"

namespace cvforge {

/// Schema violation in a run configuration. The message names the offending key.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct SweepSettings {
    double r_min = 0.0;
    double r_max = 1.0;
    int steps = 21;
    /// Bisection tolerance on r for the threshold search.
    double tol = 1e-8;
};

struct GraphSettings {
    /// |w| below this is not an edge in exports and connectivity counts.
    double threshold = 1e-6;
    /// Bipartite color class (0 or 1) that receives the quarter-turn rotation.
    int mask_class = 0;
};

/// Everything a command needs besides its command-line overrides.
///
/// JSON schema (unknown keys are rejected at every level):
///   kind        "oneD" | "threeD"                        required
///   n_max       int >= 0                                  default 1
///   n_bins      int >= 2                                  default 8
///   r           number >= 0, all squeezers                default 1.0
///   r_signal    number >= 0, overrides r for x-type       optional
///   r_idler     number >= 0, overrides r for p-type       optional
///   pump_offsets  [int] one per squeezer                  optional
///   delay_phases  [number] one per squeezer               optional
///   metadata    {fsr_hz, bin_period_s, nonlinear_coefficient, pump_parameter,
///                crystal_length_m, cavity_length_m}       optional
///   seed        unsigned int                              default 0
///   out         string, output directory                  default "out"
///   sweep       {r_min, r_max, steps, tol}                optional
///   graph       {threshold, mask_class}                   optional
struct RunConfig {
    PipelineConfig pipeline;
    uint64_t seed = 0;
    std::string out = "out";
    SweepSettings sweep;
    GraphSettings graph;
};

RunConfig run_config_from_json(const nlohmann::json &j);
nlohmann::json run_config_to_json(const RunConfig &cfg);
/// Reads and parses a file. Parse errors become ConfigError.
RunConfig load_run_config(const std::string &path);

}  // namespace cvforge

#endif
