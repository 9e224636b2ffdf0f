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


#ifndef _CVFORGE_MBQC_H
#define _CVFORGE_MBQC_H

#include <Eigen/Dense>
#include <json.hpp>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cvforge/gaussian.h"
#include "cvforge/graph.h"
#include "cvforge/pipeline.h"

namespace cvforge {

/// Phase-space rotation [[cos t, -sin t], [sin t, cos t]].
Eigen::Matrix2d rotation(double t);
/// Squeeze diag(e^{-s}, e^{s}).
Eigen::Matrix2d squeeze(double s);

/// How the idler is displaced after the two homodyne outcomes m = (m_a, m_b).
enum class Feedforward {
    /// Gain K = cov(I, m) cov(m, m)^-1 of the pre-measurement state. The output
    /// mean does not depend on the outcomes at any finite squeezing.
    kConditional,
    /// The infinite-squeezing decoding gain. The averaged channel is exactly
    /// out = A in + noise with det A = 1 and noise proportional to e^{-2r}.
    kUnitGain,
};

std::string to_string(Feedforward ff);

/// Outcome policy for one teleportation step.
struct StepOutcome {
    enum class Kind { kFixed, kSample, kAverage };
    Kind kind = Kind::kFixed;
    double a = 0;
    double b = 0;

    static StepOutcome fixed(double a, double b) {
        return {Kind::kFixed, a, b};
    }
    static StepOutcome sample() {
        return {Kind::kSample, 0, 0};
    }
    /// Non-selective measurement: the deterministic channel averaged over outcomes.
    static StepOutcome average() {
        return {Kind::kAverage, 0, 0};
    }
};

struct StepRecord {
    int rail = 0;
    int wire_site = 0;
    double theta_a = 0;
    double theta_b = 0;
    ModeId port_a;
    ModeId port_b;
    ModeId output;
    /// Measured values; absent for averaged steps.
    std::optional<double> value_a;
    std::optional<double> value_b;
    double dx = 0;
    double dp = 0;

    nlohmann::json to_json() const;
};

class DegenerateAngles : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct StepResult {
    GaussianState state;
    StepRecord record;
};

/// One teleportation: beamsplitter(input, signal), homodyne the two outputs at
/// theta_a (the input port) and theta_b (the signal port), then displace the
/// idler, which becomes the logical mode. Throws DegenerateAngles when
/// sin(theta_b - theta_a) vanishes.
StepResult teleport_step(
    const GaussianState &state,
    const ModeId &input,
    const ModeId &signal,
    const ModeId &idler,
    double theta_a,
    double theta_b,
    StepOutcome outcome,
    Feedforward feedforward,
    std::mt19937_64 *rng = nullptr);

/// Infinite-squeezing action of one step on the logical (x, p).
Eigen::Matrix2d ideal_step_gate(double theta_a, double theta_b);

/// Angles (theta_a, theta_b) whose ideal step gate is the identity.
std::pair<double, double> identity_angles();

struct EffectiveGate {
    Eigen::Matrix2d symplectic;
    Eigen::Matrix2d noise;

    nlohmann::json to_json() const;
};

/// Teleportation chains over the EPR pairs of one squeezer: one rail per
/// in-range pair (signal line n, idler line d - n), one site per time bin, and
/// an input mode per rail.
struct Wire {
    GaussianState state;
    std::vector<int> rails;
    int n_bins = 0;
    Nopa nopa = Nopa::kN1;
    int pump_offset = 0;

    ModeId input(int rail) const;
    ModeId signal(int rail, int site) const;
    ModeId idler(int rail, int site) const;
};

Wire make_wire(const PipelineConfig &cfg);

/// Replaces the input mode of `rail` by a state with the given mean and covariance.
void set_input(Wire &wire, int rail, const Eigen::Vector2d &mean, const Eigen::Matrix2d &cov);

struct PlanStep {
    int rail = 0;
    int wire_site = 0;
    double theta_a = 0;
    double theta_b = 0;
    StepOutcome outcome;
};

struct MeasurementPlan {
    std::vector<PlanStep> steps;
    Feedforward feedforward = Feedforward::kConditional;
};

/// Accepts either a bare list of steps or {"feedforward": ..., "steps": [...]}.
/// Step fields: wire_site, theta_a, theta_b, optional rail (default: first rail),
/// optional outcome ([a, b], "sample" or "average"; default [0, 0]).
/// Unknown keys and non-finite angles are rejected.
MeasurementPlan plan_from_json(const nlohmann::json &j, int default_rail);

struct LogicalOutput {
    int rail = 0;
    ModeId mode;
    Eigen::Vector2d mean;
    Eigen::Matrix2d cov;
};

struct PlanResult {
    GaussianState state;
    std::vector<LogicalOutput> outputs;
    std::vector<StepRecord> records;

    std::string records_jsonl() const;
};

/// Executes the plan step by step. Throws std::invalid_argument when a step names
/// an unknown rail or site, or a site whose modes were already consumed.
PlanResult run_plan(const Wire &wire, const MeasurementPlan &plan, std::mt19937_64 *rng = nullptr);

/// Effective gate of a single-rail plan, from probes with vacuum input: input
/// means 0, (1, 0), (0, 1) give the linear part, the output covariance minus the
/// propagated input covariance gives the noise. Conditional plans are probed at
/// outcomes 0; unit-gain plans use the averaged channel.
EffectiveGate plan_gate(const PipelineConfig &cfg, const MeasurementPlan &plan);

/// One step on a fresh single-rail wire at squeezing r.
EffectiveGate effective_gate(double r, double theta_a, double theta_b, Feedforward feedforward);

struct RsrCheck {
    Eigen::Matrix2d gate;
    Eigen::Matrix2d target;
    double residual = 0;
};

/// Two steps with theta_-1 = pi/2 against
/// R(-pi/2 - theta_+2/2) S(ln tan(theta_-2/2)) R(-pi/2 - theta_+2/2 - theta_+1).
/// Throws std::domain_error when tan(theta_-2/2) <= 0.
RsrCheck verify_rsr_composition(
    double theta_p1, double theta_p2, double theta_m2, double r, Feedforward feedforward = Feedforward::kConditional);

/// Rotation and squeeze conventions, for output metadata.
nlohmann::json gate_conventions();

enum class MacronodeRole { kWire, kControl };

struct Macronode {
    ModeId signal;
    ModeId idler;
    MacronodeRole role;
};

/// Signal/idler pairs sharing (nopa, line, bin). Even bins are wire
/// macronodes, odd bins control macronodes. Throws when a signal or idler
/// has no partner.
std::vector<Macronode> macronodes(const ModeRegistry &registry);

/// a_plus = (a_S + a_I)/sqrt2, a_minus = (a_S - a_I)/sqrt2 at every macronode,
/// relabeling signal -> plus and idler -> minus. The map is its own inverse:
/// a state already in the plus/minus basis is mapped back.
GaussianState macronode_map(const GaussianState &state);

/// Connected components of the cluster adjacency in the distributed-mode
/// basis: the pipeline's passive network is extended by the macronode
/// couplers, the mask is the color-0 class of the propagated graph, and
/// edges are weights above `threshold`. Component sizes are what a
/// disjoint-squares decomposition would make all equal to 4.
std::vector<std::vector<size_t>> macronode_components(const PipelineResult &built, double threshold);

}  // namespace cvforge

#endif
