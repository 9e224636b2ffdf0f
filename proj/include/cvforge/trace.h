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


#ifndef _CVFORGE_TRACE_H
#define _CVFORGE_TRACE_H

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cvforge/gaussian.h"

namespace cvforge {

enum class OpKind { kTwoModeSqueeze, kBeamsplitter, kPhase, kDelay, kRejectedPair, kCheckpoint };

std::string to_string(OpKind kind);

/// One recorded pipeline step.
///
///   kTwoModeSqueeze  modes {i, j}        params {r_x, r_p}
///   kBeamsplitter    modes {i, j}        label names the coupler stage
///   kPhase           modes {i}           params {phi}
///   kDelay           modes = permutation targets, params {dk}
///   kRejectedPair    no modes            params {n, partner}: a line left in vacuum
///   kCheckpoint      no modes            label names the point in the program
struct TraceOp {
    OpKind kind;
    std::vector<size_t> modes;
    std::vector<double> params;
    std::string label;
};

struct PipelineTrace {
    std::vector<TraceOp> ops;

    void squeeze(size_t i, size_t j, double r_x, double r_p, std::string label = {});
    void beamsplitter(size_t i, size_t j, std::string label = {});
    void phase(size_t i, double phi, std::string label = {});
    void delay(const DelayRelabel &delay, int dk, std::string label = {});
    void rejected(int n, int partner, std::string label = {});
    void checkpoint(std::string label);

    bool has_checkpoint(const std::string &label) const;
};

/// Symplectic op for a state-changing trace entry, nullopt for bookkeeping entries.
std::optional<SymplecticOp> op_of(const TraceOp &op);

/// Applies the trace to vacuum. With `stop_at`, stops just before that checkpoint.
GaussianState replay(const ModeRegistry &registry, const PipelineTrace &trace, const std::string &stop_at = {});

nlohmann::json trace_to_json(const PipelineTrace &trace);
PipelineTrace trace_from_json(const nlohmann::json &j);

}  // namespace cvforge

#endif
