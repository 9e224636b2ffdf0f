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


#ifndef _CVFORGE_COMMANDS_H
#define _CVFORGE_COMMANDS_H

#include <json.hpp>
#include <ostream>
#include <string>

#include "cvforge/config.h"
#include "cvforge/graph.h"
#include "cvforge/pipeline.h"

namespace cvforge {

/// Exit-code contract shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVlfFail = 2;

/// Cluster adjacency of a built pipeline with the mask chosen by `graph`.
struct ClusterGraph {
    HGraph structure;
    ClusterAdjacency adjacency;
    int mask_class = 0;

    nlohmann::json metadata() const;
};

ClusterGraph cluster_graph(const PipelineResult &built, const GraphSettings &graph);

/// Writes covariance.bin, registry.json, trace.json and edges.csv into
/// `out_dir` and prints the nullifier table. Returns 2 if any interior
/// nullifier fails the bound, else 0.
int cmd_build(const RunConfig &cfg, const std::string &out_dir, std::ostream &out);

/// Writes variances.csv and vlf_report.json. The report is evaluated at the
/// last grid point; the threshold is searched over [r_min, r_max] when the grid
/// has more than one point. A range that does not bracket the bound produces a
/// warning on `err`, not a failure. Returns the report's exit code.
int cmd_sweep(const RunConfig &cfg, const SweepSettings &sweep, const std::string &out_dir, std::ostream &out,
              std::ostream &err);

/// Runs a measurement plan on the wire of a oneD config. Writes records.jsonl
/// and gate_report.json. The report carries one effective gate per rail and,
/// for a two-step single-rail plan with theta_a - theta_b = pi/2 on the first
/// step, the residual against the closed-form R S R product.
int cmd_mbqc(const RunConfig &cfg, const nlohmann::json &plan, const std::string &out_dir, std::ostream &out);

/// Writes graph.json and edges.csv with component counts.
int cmd_graph(const RunConfig &cfg, const std::string &out_dir, std::ostream &out);

}  // namespace cvforge

#endif
