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


#include "cvforge/mbqc.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "cvforge/io.h"
#include "cvforge/tolerances.h"

namespace cvforge {

Eigen::Matrix2d rotation(double t) {
    Eigen::Matrix2d m;
    m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return m;
}

Eigen::Matrix2d squeeze(double s) {
    Eigen::Matrix2d m;
    m << std::exp(-s), 0, 0, std::exp(s);
    return m;
}

std::string to_string(Feedforward ff) {
    return ff == Feedforward::kConditional ? "conditional" : "unit_gain";
}

nlohmann::json StepRecord::to_json() const {
    nlohmann::json j = {{"rail", rail},
                        {"wire_site", wire_site},
                        {"theta_a", theta_a},
                        {"theta_b", theta_b},
                        {"port_a", port_a.str()},
                        {"port_b", port_b.str()},
                        {"output", output.str()},
                        {"dx", dx},
                        {"dp", dp}};
    if (value_a) {
        j["value_a"] = *value_a;
        j["value_b"] = *value_b;
    } else {
        j["averaged"] = true;
    }
    return j;
}

namespace {

/// Rows: the two homodyne equations solved for the idler in the ideal limit,
///   sqrt2 m = D in + C out.
Eigen::Matrix2d decoding_c(double ta, double tb) {
    Eigen::Matrix2d c;
    c << -std::cos(ta), std::sin(ta), std::cos(tb), -std::sin(tb);
    return c;
}

Eigen::Matrix2d decoding_d(double ta, double tb) {
    Eigen::Matrix2d d;
    d << std::cos(ta), std::sin(ta), std::cos(tb), std::sin(tb);
    return d;
}

void check_angles(double ta, double tb) {
    if (!std::isfinite(ta) || !std::isfinite(tb)) {
        throw std::invalid_argument("teleport_step: angles must be finite");
    }
    if (std::abs(std::sin(tb - ta)) < 1e-12) {
        throw DegenerateAngles("teleport_step: theta_a and theta_b coincide mod pi; decoding is singular");
    }
}

QuadCombination homodyne_quad(const ModeId &mode, double theta) {
    return {{mode, Quad::kX, std::cos(theta)}, {mode, Quad::kP, std::sin(theta)}};
}

}  // namespace

Eigen::Matrix2d ideal_step_gate(double theta_a, double theta_b) {
    check_angles(theta_a, theta_b);
    return -decoding_c(theta_a, theta_b).inverse() * decoding_d(theta_a, theta_b);
}

std::pair<double, double> identity_angles() {
    // -C^-1 D = I needs sin(theta_a) = 0 and cos(theta_b) = 0.
    return {0.0, std::numbers::pi / 2};
}

StepResult teleport_step(
    const GaussianState &state,
    const ModeId &input,
    const ModeId &signal,
    const ModeId &idler,
    double theta_a,
    double theta_b,
    StepOutcome outcome,
    Feedforward feedforward,
    std::mt19937_64 *rng) {
    check_angles(theta_a, theta_b);
    GaussianState st = apply(state, beamsplitter(state.index(input), state.index(signal)));

    const QuadCombination qa = homodyne_quad(input, theta_a);
    const QuadCombination qb = homodyne_quad(signal, theta_b);
    const QuadCombination ix = {{idler, Quad::kX, 1}};
    const QuadCombination ip = {{idler, Quad::kP, 1}};

    Eigen::Matrix2d gain;
    if (feedforward == Feedforward::kConditional) {
        Eigen::Matrix2d smm;
        smm << quadrature_variance(st, qa), quadrature_covariance(st, qa, qb), quadrature_covariance(st, qb, qa),
            quadrature_variance(st, qb);
        Eigen::Matrix2d sim;
        sim << quadrature_covariance(st, ix, qa), quadrature_covariance(st, ix, qb), quadrature_covariance(st, ip, qa),
            quadrature_covariance(st, ip, qb);
        if (std::abs(smm.determinant()) < tol::kDegenerateVariance) {
            throw DegenerateMeasurement("teleport_step: homodyne outcomes are linearly dependent");
        }
        gain = sim * smm.inverse();
    } else {
        gain = std::sqrt(2.0) * decoding_c(theta_a, theta_b).inverse();
    }

    StepResult result;
    StepRecord &rec = result.record;
    rec.theta_a = theta_a;
    rec.theta_b = theta_b;
    rec.port_a = input;
    rec.port_b = signal;
    rec.output = idler;

    if (outcome.kind == StepOutcome::Kind::kAverage) {
        // out = idler - gain * m on the pre-measurement state, measured ports traced out.
        const size_t m = st.num_modes();
        const size_t n = 2 * m;
        const size_t a = st.index(input);
        const size_t b = st.index(signal);
        const size_t o = st.index(idler);
        Eigen::MatrixXd lin = Eigen::MatrixXd::Identity(n, n);
        const double ca = std::cos(theta_a), sa = std::sin(theta_a);
        const double cb = std::cos(theta_b), sb = std::sin(theta_b);
        for (int row = 0; row < 2; row++) {
            const size_t target = row == 0 ? o : m + o;
            lin(target, a) -= gain(row, 0) * ca;
            lin(target, m + a) -= gain(row, 0) * sa;
            lin(target, b) -= gain(row, 1) * cb;
            lin(target, m + b) -= gain(row, 1) * sb;
        }
        Eigen::VectorXd mean = lin * st.mean();
        Eigen::MatrixXd cov = lin * Eigen::MatrixXd(st.cov()) * lin.transpose();
        cov = 0.5 * (cov + cov.transpose()).eval();
        GaussianState mapped(st.registry(), mean, RowMatrix(cov));
        result.state = discard(discard(mapped, input), signal);
        return result;
    }

    HomodyneResult ha = homodyne(st, input, theta_a,
                                 outcome.kind == StepOutcome::Kind::kFixed ? std::optional<double>(outcome.a)
                                                                           : std::nullopt,
                                 rng);
    HomodyneResult hb = homodyne(ha.state, signal, theta_b,
                                 outcome.kind == StepOutcome::Kind::kFixed ? std::optional<double>(outcome.b)
                                                                           : std::nullopt,
                                 rng);
    Eigen::Vector2d shift = -gain * Eigen::Vector2d(ha.value, hb.value);
    rec.value_a = ha.value;
    rec.value_b = hb.value;
    rec.dx = shift[0];
    rec.dp = shift[1];
    result.state = displace(std::move(hb.state), idler, shift[0], shift[1]);
    return result;
}

nlohmann::json EffectiveGate::to_json() const {
    auto mat = [](const Eigen::Matrix2d &m) {
        return nlohmann::json::array({nlohmann::json::array({m(0, 0), m(0, 1)}), nlohmann::json::array({m(1, 0), m(1, 1)})});
    };
    return {{"symplectic", mat(symplectic)}, {"noise", mat(noise)}, {"det", symplectic.determinant()}};
}

ModeId Wire::input(int rail) const {
    return ModeId{nopa, Field::kInput, rail, 0};
}

ModeId Wire::signal(int rail, int site) const {
    return ModeId{nopa, Field::kSignal, rail, site};
}

ModeId Wire::idler(int rail, int site) const {
    return ModeId{nopa, Field::kIdler, pair_partner(rail, pump_offset), site};
}

Wire make_wire(const PipelineConfig &cfg) {
    cfg.validate();
    if (cfg.kind != PipelineKind::kOneD) {
        throw std::invalid_argument("make_wire: measurement plans run on a oneD configuration");
    }
    const NopaSettings &nopa = cfg.nopas.front();
    Wire wire;
    wire.n_bins = cfg.n_bins;
    wire.nopa = nopa.id;
    wire.pump_offset = nopa.pump_offset;
    PairingTable table = pairing_table(cfg.n_max, nopa.pump_offset);
    std::vector<ModeId> inputs;
    for (auto [n, m] : table.pairs) {
        wire.rails.push_back(n);
        inputs.push_back(wire.input(n));
    }
    ModeRegistry reg = enumerate_modes(cfg.lattice(), {nopa.id}).extended(inputs);
    wire.state = GaussianState::vacuum(reg);
    for (int k = 0; k < cfg.n_bins; k++) {
        for (int n : wire.rails) {
            wire.state.apply(two_mode_squeeze(reg.index(wire.signal(n, k)), reg.index(wire.idler(n, k)),
                                              nopa.r_signal, nopa.r_idler));
        }
    }
    return wire;
}

void set_input(Wire &wire, int rail, const Eigen::Vector2d &mean, const Eigen::Matrix2d &cov) {
    if (std::find(wire.rails.begin(), wire.rails.end(), rail) == wire.rails.end()) {
        throw std::invalid_argument("set_input: unknown rail " + std::to_string(rail));
    }
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > tol::kSymmetry || cov.determinant() < 0.25 - tol::kPhysics ||
        cov(0, 0) <= 0) {
        throw std::invalid_argument("set_input: covariance violates the uncertainty relation");
    }
    const GaussianState &st = wire.state;
    const size_t m = st.num_modes();
    const size_t q = st.index(wire.input(rail));
    const size_t rows[2] = {q, m + q};
    for (size_t r : rows) {
        for (size_t c = 0; c < 2 * m; c++) {
            if (c != q && c != m + q && st.cov()(r, c) != 0) {
                throw std::invalid_argument("set_input: input mode is already correlated with the wire");
            }
        }
    }
    Eigen::VectorXd new_mean = st.mean();
    RowMatrix new_cov = st.cov();
    for (int a = 0; a < 2; a++) {
        new_mean[rows[a]] = mean[a];
        for (int b = 0; b < 2; b++) {
            new_cov(rows[a], rows[b]) = cov(a, b);
        }
    }
    wire.state = GaussianState(st.registry(), std::move(new_mean), std::move(new_cov));
}

MeasurementPlan plan_from_json(const nlohmann::json &j, int default_rail) {
    MeasurementPlan plan;
    const nlohmann::json *steps = &j;
    if (j.is_object()) {
        for (const auto &[key, _] : j.items()) {
            if (key != "steps" && key != "feedforward") {
                throw std::invalid_argument("plan: unknown key '" + key + "'");
            }
        }
        if (j.contains("feedforward")) {
            std::string ff = j.at("feedforward").get<std::string>();
            if (ff == "conditional") {
                plan.feedforward = Feedforward::kConditional;
            } else if (ff == "unit_gain") {
                plan.feedforward = Feedforward::kUnitGain;
            } else {
                throw std::invalid_argument("plan: feedforward must be 'conditional' or 'unit_gain'");
            }
        }
        steps = &j.at("steps");
    }
    if (!steps->is_array()) {
        throw std::invalid_argument("plan: steps must be a list");
    }
    for (const auto &s : *steps) {
        if (!s.is_object()) {
            throw std::invalid_argument("plan: each step must be an object");
        }
        for (const auto &[key, _] : s.items()) {
            if (key != "wire_site" && key != "theta_a" && key != "theta_b" && key != "outcome" && key != "rail") {
                throw std::invalid_argument("plan: unknown step key '" + key + "'");
            }
        }
        PlanStep step;
        step.rail = s.value("rail", default_rail);
        step.wire_site = s.at("wire_site").get<int>();
        step.theta_a = s.at("theta_a").get<double>();
        step.theta_b = s.at("theta_b").get<double>();
        if (!std::isfinite(step.theta_a) || !std::isfinite(step.theta_b)) {
            throw std::invalid_argument("plan: angles must be finite");
        }
        step.outcome = StepOutcome::fixed(0, 0);
        if (s.contains("outcome")) {
            const auto &o = s.at("outcome");
            if (o.is_string() && o.get<std::string>() == "sample") {
                step.outcome = StepOutcome::sample();
            } else if (o.is_string() && o.get<std::string>() == "average") {
                step.outcome = StepOutcome::average();
            } else if (o.is_array() && o.size() == 2 && o[0].is_number() && o[1].is_number()) {
                step.outcome = StepOutcome::fixed(o[0].get<double>(), o[1].get<double>());
            } else {
                throw std::invalid_argument("plan: outcome must be [a, b], \"sample\" or \"average\"");
            }
        }
        plan.steps.push_back(step);
    }
    return plan;
}

std::string PlanResult::records_jsonl() const {
    std::ostringstream out;
    for (const StepRecord &r : records) {
        out << r.to_json().dump() << '\n';
    }
    return out.str();
}

PlanResult run_plan(const Wire &wire, const MeasurementPlan &plan, std::mt19937_64 *rng) {
    PlanResult result;
    result.state = wire.state;
    std::map<int, ModeId> logical;
    for (int rail : wire.rails) {
        logical[rail] = wire.input(rail);
    }
    std::set<std::pair<int, int>> consumed;
    for (const PlanStep &step : plan.steps) {
        if (!logical.count(step.rail)) {
            throw std::invalid_argument("run_plan: unknown rail " + std::to_string(step.rail));
        }
        if (step.wire_site < 0 || step.wire_site >= wire.n_bins) {
            throw std::invalid_argument("run_plan: wire site " + std::to_string(step.wire_site) + " out of range");
        }
        if (!consumed.insert({step.rail, step.wire_site}).second) {
            throw std::invalid_argument("run_plan: rail " + std::to_string(step.rail) + " site " +
                                        std::to_string(step.wire_site) + " was already consumed");
        }
        StepResult sr = teleport_step(result.state, logical[step.rail], wire.signal(step.rail, step.wire_site),
                                      wire.idler(step.rail, step.wire_site), step.theta_a, step.theta_b, step.outcome,
                                      plan.feedforward, rng);
        sr.record.rail = step.rail;
        sr.record.wire_site = step.wire_site;
        result.records.push_back(sr.record);
        result.state = std::move(sr.state);
        logical[step.rail] = wire.idler(step.rail, step.wire_site);
    }
    const size_t m = result.state.num_modes();
    for (auto [rail, mode] : logical) {
        LogicalOutput out;
        out.rail = rail;
        out.mode = mode;
        const size_t q = result.state.index(mode);
        out.mean = Eigen::Vector2d(result.state.mean()[q], result.state.mean()[m + q]);
        out.cov << result.state.cov()(q, q), result.state.cov()(q, m + q), result.state.cov()(m + q, q),
            result.state.cov()(m + q, m + q);
        result.outputs.push_back(out);
    }
    return result;
}

EffectiveGate plan_gate(const PipelineConfig &cfg, const MeasurementPlan &plan) {
    if (plan.steps.empty()) {
        return EffectiveGate{Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Zero()};
    }
    const int rail = plan.steps.front().rail;
    MeasurementPlan probe = plan;
    for (PlanStep &s : probe.steps) {
        if (s.rail != rail) {
            throw std::invalid_argument("plan_gate: all steps must use one rail");
        }
        s.outcome = plan.feedforward == Feedforward::kConditional ? StepOutcome::fixed(0, 0) : StepOutcome::average();
    }
    const Eigen::Matrix2d vac = 0.5 * Eigen::Matrix2d::Identity();
    auto run = [&](const Eigen::Vector2d &mean) {
        Wire wire = make_wire(cfg);
        set_input(wire, rail, mean, vac);
        PlanResult res = run_plan(wire, probe);
        for (const LogicalOutput &o : res.outputs) {
            if (o.rail == rail) {
                return o;
            }
        }
        throw std::logic_error("plan_gate: rail output missing");
    };
    LogicalOutput base = run(Eigen::Vector2d::Zero());
    LogicalOutput ex = run(Eigen::Vector2d(1, 0));
    LogicalOutput ep = run(Eigen::Vector2d(0, 1));
    EffectiveGate gate;
    gate.symplectic.col(0) = ex.mean - base.mean;
    gate.symplectic.col(1) = ep.mean - base.mean;
    gate.noise = base.cov - gate.symplectic * vac * gate.symplectic.transpose();
    gate.noise = 0.5 * (gate.noise + gate.noise.transpose()).eval();
    return gate;
}

EffectiveGate effective_gate(double r, double theta_a, double theta_b, Feedforward feedforward) {
    check_angles(theta_a, theta_b);
    MeasurementPlan plan;
    plan.feedforward = feedforward;
    plan.steps.push_back(PlanStep{0, 0, theta_a, theta_b, StepOutcome::fixed(0, 0)});
    return plan_gate(PipelineConfig::one_d(0, 2, r), plan);
}

RsrCheck verify_rsr_composition(double theta_p1, double theta_p2, double theta_m2, double r, Feedforward feedforward) {
    const double t = std::tan(0.5 * theta_m2);
    if (!(t > 0) || !std::isfinite(t)) {
        throw std::domain_error("verify_rsr_composition: tan(theta_-2 / 2) must be positive");
    }
    const double theta_m1 = std::numbers::pi / 2;
    MeasurementPlan plan;
    plan.feedforward = feedforward;
    plan.steps.push_back(
        PlanStep{0, 0, 0.5 * (theta_p1 + theta_m1), 0.5 * (theta_p1 - theta_m1), StepOutcome::fixed(0, 0)});
    plan.steps.push_back(
        PlanStep{0, 1, 0.5 * (theta_p2 + theta_m2), 0.5 * (theta_p2 - theta_m2), StepOutcome::fixed(0, 0)});
    RsrCheck check;
    check.gate = plan_gate(PipelineConfig::one_d(0, 2, r), plan).symplectic;
    const double half = -std::numbers::pi / 2 - 0.5 * theta_p2;
    check.target = rotation(half) * squeeze(std::log(t)) * rotation(half - theta_p1);
    check.residual = (check.gate - check.target).cwiseAbs().maxCoeff();
    return check;
}

nlohmann::json gate_conventions() {
    return {{"rotation", "R(t) = [[cos t, -sin t], [sin t, cos t]] on (x, p)"},
            {"squeeze", "S(s) = diag(exp(-s), exp(s))"},
            {"homodyne", "m = x cos(theta) + p sin(theta)"},
            {"theta_plus", "theta_a + theta_b"},
            {"theta_minus", "theta_a - theta_b"},
            {"coupler", "a_in' = (a_in - a_S)/sqrt2 measured at theta_a, a_S' = (a_in + a_S)/sqrt2 at theta_b"},
            {"identity_angles", {identity_angles().first, identity_angles().second}}};
}

std::vector<Macronode> macronodes(const ModeRegistry &registry) {
    struct Site {
        std::optional<ModeId> first;
        std::optional<ModeId> second;
    };
    std::map<std::tuple<Nopa, int, int>, Site> sites;
    for (const ModeId &id : registry.modes()) {
        auto key = std::make_tuple(id.nopa, id.freq, id.bin);
        if (id.field == Field::kSignal || id.field == Field::kPlus) {
            sites[key].first = id;
        } else if (id.field == Field::kIdler || id.field == Field::kMinus) {
            sites[key].second = id;
        }
    }
    std::vector<Macronode> out;
    for (const auto &[key, site] : sites) {
        if (!site.first || !site.second) {
            const ModeId &lone = site.first ? *site.first : *site.second;
            throw std::invalid_argument("macronode: " + lone.str() + " has no partner at its site");
        }
        if ((site.first->field == Field::kSignal) != (site.second->field == Field::kIdler)) {
            throw std::invalid_argument("macronode: mixed basis at site of " + site.first->str());
        }
        out.push_back(Macronode{*site.first, *site.second,
                                std::get<2>(key) % 2 == 0 ? MacronodeRole::kWire : MacronodeRole::kControl});
    }
    return out;
}

GaussianState macronode_map(const GaussianState &state) {
    std::vector<Macronode> nodes = macronodes(state.registry());
    const double h = std::sqrt(0.5);
    Eigen::Matrix4d mix = Eigen::Matrix4d::Zero();
    mix.topLeftCorner<2, 2>() << h, h, h, -h;
    mix.bottomRightCorner<2, 2>() = mix.topLeftCorner<2, 2>();
    GaussianState out = state;
    std::vector<ModeId> labels = state.registry().modes();
    for (const Macronode &node : nodes) {
        const size_t a = state.index(node.signal);
        const size_t b = state.index(node.idler);
        out.apply(SymplecticOp::local({a, b}, mix));
        const bool forward = node.signal.field == Field::kSignal;
        labels[a].field = forward ? Field::kPlus : Field::kSignal;
        labels[b].field = forward ? Field::kMinus : Field::kIdler;
    }
    out.relabel(state.registry().relabeled(labels));
    return out;
}

std::vector<std::vector<size_t>> macronode_components(const PipelineResult &built, double threshold) {
    PipelineTrace trace = built.trace;
    for (const Macronode &node : macronodes(built.registry())) {
        // Same pair of output modes as macronode_map; labels do not affect connectivity.
        trace.beamsplitter(built.state.index(node.signal), built.state.index(node.idler), "macronode");
    }
    HGraph h = propagate_hgraph(trace, built.state.num_modes());
    std::vector<size_t> mask = default_rotation_mask(h);
    ClusterAdjacency adj = cluster_adjacency(z_from_state(macronode_map(built.state)), mask, h);
    return components(adj.weights, threshold);
}

}  // namespace cvforge
