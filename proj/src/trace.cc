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


#include "cvforge/trace.h"

#include <stdexcept>

namespace cvforge {

std::string to_string(OpKind kind) {
    switch (kind) {
        case OpKind::kTwoModeSqueeze:
            return "two_mode_squeeze";
        case OpKind::kBeamsplitter:
            return "beamsplitter";
        case OpKind::kPhase:
            return "phase";
        case OpKind::kDelay:
            return "delay";
        case OpKind::kRejectedPair:
            return "rejected_pair";
        case OpKind::kCheckpoint:
            return "checkpoint";
    }
    return "?";
}

void PipelineTrace::squeeze(size_t i, size_t j, double r_x, double r_p, std::string label) {
    ops.push_back({OpKind::kTwoModeSqueeze, {i, j}, {r_x, r_p}, std::move(label)});
}

void PipelineTrace::beamsplitter(size_t i, size_t j, std::string label) {
    ops.push_back({OpKind::kBeamsplitter, {i, j}, {}, std::move(label)});
}

void PipelineTrace::phase(size_t i, double phi, std::string label) {
    ops.push_back({OpKind::kPhase, {i}, {phi}, std::move(label)});
}

void PipelineTrace::delay(const DelayRelabel &delay, int dk, std::string label) {
    ops.push_back({OpKind::kDelay, delay.op.targets(), {static_cast<double>(dk)}, std::move(label)});
}

void PipelineTrace::rejected(int n, int partner, std::string label) {
    ops.push_back({OpKind::kRejectedPair, {}, {static_cast<double>(n), static_cast<double>(partner)}, std::move(label)});
}

void PipelineTrace::checkpoint(std::string label) {
    ops.push_back({OpKind::kCheckpoint, {}, {}, std::move(label)});
}

bool PipelineTrace::has_checkpoint(const std::string &label) const {
    for (const TraceOp &op : ops) {
        if (op.kind == OpKind::kCheckpoint && op.label == label) {
            return true;
        }
    }
    return false;
}

std::optional<SymplecticOp> op_of(const TraceOp &op) {
    switch (op.kind) {
        case OpKind::kTwoModeSqueeze:
            return two_mode_squeeze(op.modes.at(0), op.modes.at(1), op.params.at(0), op.params.at(1));
        case OpKind::kBeamsplitter:
            return beamsplitter(op.modes.at(0), op.modes.at(1));
        case OpKind::kPhase:
            return phase_rotate(op.modes.at(0), op.params.at(0));
        case OpKind::kDelay:
            return SymplecticOp::permutation(op.modes);
        case OpKind::kRejectedPair:
        case OpKind::kCheckpoint:
            return std::nullopt;
    }
    return std::nullopt;
}

GaussianState replay(const ModeRegistry &registry, const PipelineTrace &trace, const std::string &stop_at) {
    if (!stop_at.empty() && !trace.has_checkpoint(stop_at)) {
        throw std::invalid_argument("replay: no checkpoint named '" + stop_at + "'");
    }
    GaussianState state = GaussianState::vacuum(registry);
    for (const TraceOp &op : trace.ops) {
        if (op.kind == OpKind::kCheckpoint && op.label == stop_at) {
            break;
        }
        if (auto s = op_of(op)) {
            state.apply(*s);
        }
    }
    return state;
}

nlohmann::json trace_to_json(const PipelineTrace &trace) {
    nlohmann::json ops = nlohmann::json::array();
    for (const TraceOp &op : trace.ops) {
        nlohmann::json j = {{"kind", to_string(op.kind)}, {"modes", op.modes}, {"params", op.params}};
        if (!op.label.empty()) {
            j["label"] = op.label;
        }
        ops.push_back(std::move(j));
    }
    return {{"ops", std::move(ops)}};
}

PipelineTrace trace_from_json(const nlohmann::json &j) {
    PipelineTrace trace;
    for (const auto &o : j.at("ops")) {
        std::string kind = o.at("kind").get<std::string>();
        TraceOp op;
        bool found = false;
        for (OpKind k : {OpKind::kTwoModeSqueeze, OpKind::kBeamsplitter, OpKind::kPhase, OpKind::kDelay,
                         OpKind::kRejectedPair, OpKind::kCheckpoint}) {
            if (to_string(k) == kind) {
                op.kind = k;
                found = true;
            }
        }
        if (!found) {
            throw std::invalid_argument("trace: unknown op kind '" + kind + "'");
        }
        op.modes = o.at("modes").get<std::vector<size_t>>();
        op.params = o.at("params").get<std::vector<double>>();
        op.label = o.value("label", "");
        trace.ops.push_back(std::move(op));
    }
    return trace;
}

}  // namespace cvforge
