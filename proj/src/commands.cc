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


#include "cvforge/commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>

#include "cvforge/io.h"
#include "cvforge/mbqc.h"
#include "cvforge/parallel.h"
#include "cvforge/verify.h"

namespace cvforge {

namespace {

std::filesystem::path prepare(const std::string &out_dir) {
    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string json_text(const nlohmann::json &j) {
    return j.dump(2) + "\n";
}

// Config echo for artifacts. The output directory is left out so that bytes
// depend only on (config, seed), not on where they were written.
nlohmann::json config_echo(const RunConfig &cfg) {
    nlohmann::json j = run_config_to_json(cfg);
    j.erase("out");
    return j;
}

nlohmann::json matrix_json(const Eigen::Matrix2d &m) {
    return nlohmann::json::array(
        {nlohmann::json::array({m(0, 0), m(0, 1)}), nlohmann::json::array({m(1, 0), m(1, 1)})});
}

}  // namespace

nlohmann::json ClusterGraph::metadata() const {
    return {{"mask_class", mask_class},
            {"mask_size", adjacency.mask.size()},
            {"convention", adjacency.convention},
            {"note", "either color class gives a valid cluster adjacency; the two differ by a sign pattern"}};
}

ClusterGraph cluster_graph(const PipelineResult &built, const GraphSettings &graph) {
    ClusterGraph out;
    out.mask_class = graph.mask_class;
    out.structure = propagate_hgraph(built.trace, built.state.num_modes());
    BipartiteCheck check = check_bipartite(out.structure);
    if (!check.bipartite) {
        throw std::runtime_error("graph: propagated structure is not bipartite");
    }
    std::vector<size_t> mask;
    for (size_t i = 0; i < check.coloring.size(); i++) {
        if (check.coloring[i] == graph.mask_class) {
            mask.push_back(i);
        }
    }
    out.adjacency = cluster_adjacency(z_from_state(built.state), mask, out.structure);
    return out;
}

int cmd_build(const RunConfig &cfg, const std::string &out_dir, std::ostream &out) {
    const std::filesystem::path dir = prepare(out_dir);
    PipelineResult built = build(cfg.pipeline);
    ClusterGraph graph = cluster_graph(built, cfg.graph);

    {
        std::ofstream bin(dir / "covariance.bin", std::ios::binary);
        if (!bin) {
            throw std::runtime_error("cannot write " + (dir / "covariance.bin").string());
        }
        write_covariance_binary(bin, built.state.cov());
    }
    nlohmann::json registry = {{"config", config_echo(cfg)},
                               {"rotation", graph.metadata()},
                               {"registry", registry_to_json(built.registry())}};
    write_text_file((dir / "registry.json").string(), json_text(registry));
    write_text_file((dir / "trace.json").string(), json_text(trace_to_json(built.trace)));
    write_text_file((dir / "edges.csv").string(),
                    edges_to_csv(graph.adjacency.weights, built.registry(), cfg.graph.threshold));

    VlfReport report = vlf_check(built.state, pipeline_nullifiers(cfg.pipeline, built.registry()));
    out << "built " << to_string(cfg.pipeline.kind) << ": " << built.state.num_modes() << " modes, "
        << built.trace.ops.size() << " trace ops\n";
    if (report.rows.empty()) {
        out << "no interior nullifiers for this layout\n";
        return kExitOk;
    }
    out << report.to_table();
    return report.exit_code();
}

int cmd_sweep(const RunConfig &cfg, const SweepSettings &sweep_cfg, const std::string &out_dir, std::ostream &out,
              std::ostream &err) {
    if (sweep_cfg.steps < 1) {
        throw std::invalid_argument("sweep: steps must be >= 1");
    }
    if (!(sweep_cfg.r_min < sweep_cfg.r_max) || sweep_cfg.r_min < 0) {
        throw std::invalid_argument("sweep: need 0 <= r_min < r_max");
    }
    std::vector<double> grid;
    for (int i = 0; i < sweep_cfg.steps; i++) {
        grid.push_back(sweep_cfg.steps == 1 ? sweep_cfg.r_min
                                            : sweep_cfg.r_min + (sweep_cfg.r_max - sweep_cfg.r_min) * i /
                                                                    (sweep_cfg.steps - 1));
    }
    {
        PipelineResult probe = build(cfg.pipeline);
        if (pipeline_nullifiers(cfg.pipeline, probe.registry()).items.empty()) {
            throw std::invalid_argument("sweep: this layout has no interior nullifiers");
        }
    }
    const std::filesystem::path dir = prepare(out_dir);
    VarianceTable table = sweep(cfg.pipeline, grid, worker_count());
    write_text_file((dir / "variances.csv").string(), table.to_csv());

    PipelineConfig last = cfg.pipeline.with_r(grid.back());
    PipelineResult built = build(last);
    VlfReport report = vlf_check(built.state, pipeline_nullifiers(last, built.registry()));
    if (grid.size() > 1) {
        try {
            report.threshold = find_threshold(cfg.pipeline, sweep_cfg.tol, sweep_cfg.r_min, sweep_cfg.r_max);
        } catch (const NonBracketingRange &e) {
            err << "warning: " << e.what() << "\n";
        }
    }
    nlohmann::json doc = report.to_json();
    doc["summary"]["r"] = grid.back();
    doc["summary"]["grid_points"] = grid.size();
    write_text_file((dir / "vlf_report.json").string(), json_text(doc));

    out << table.rows.size() << " rows over " << grid.size() << " grid points\n";
    out << "at r = " << format_double(grid.back()) << ": max variance " << format_double(report.max_variance) << ", "
        << (report.all_pass ? "all pass" : "NOT all pass") << "\n";
    if (report.threshold) {
        out << "threshold r* = " << format_double(report.threshold->r) << " ("
            << format_double(report.threshold->db) << " dB)\n";
    } else {
        out << "threshold: none\n";
    }
    return report.exit_code();
}

int cmd_mbqc(const RunConfig &cfg, const nlohmann::json &plan_json, const std::string &out_dir, std::ostream &out) {
    if (cfg.pipeline.kind != PipelineKind::kOneD) {
        throw std::invalid_argument("mbqc: plans run on a oneD config, got " + to_string(cfg.pipeline.kind));
    }
    Wire wire = make_wire(cfg.pipeline);
    if (wire.rails.empty()) {
        throw std::invalid_argument("mbqc: config has no in-range rails");
    }
    MeasurementPlan plan = plan_from_json(plan_json, wire.rails.front());
    std::mt19937_64 rng(cfg.seed);
    PlanResult result = run_plan(wire, plan, &rng);

    const std::filesystem::path dir = prepare(out_dir);
    write_text_file((dir / "records.jsonl").string(), result.records_jsonl());

    std::map<int, MeasurementPlan> per_rail;
    for (const PlanStep &s : plan.steps) {
        per_rail[s.rail].feedforward = plan.feedforward;
        per_rail[s.rail].steps.push_back(s);
    }
    nlohmann::json rails = nlohmann::json::array();
    for (const LogicalOutput &o : result.outputs) {
        nlohmann::json r = {{"rail", o.rail},
                            {"mode", o.mode.str()},
                            {"mean", {o.mean[0], o.mean[1]}},
                            {"cov", matrix_json(o.cov)},
                            {"steps", per_rail.count(o.rail) ? per_rail[o.rail].steps.size() : 0}};
        if (per_rail.count(o.rail)) {
            r["gate"] = plan_gate(cfg.pipeline, per_rail[o.rail]).to_json();
        }
        rails.push_back(r);
    }
    nlohmann::json report = {{"feedforward", to_string(plan.feedforward)},
                             {"conventions", gate_conventions()},
                             {"config", config_echo(cfg)},
                             {"rails", rails}};

    out << result.records.size() << " teleportation steps on " << per_rail.size() << " rail(s), feedforward "
        << to_string(plan.feedforward) << "\n";
    if (per_rail.size() == 1 && plan.steps.size() == 2) {
        const PlanStep &s1 = plan.steps[0];
        const PlanStep &s2 = plan.steps[1];
        const double theta_m1 = s1.theta_a - s1.theta_b;
        if (std::abs(std::remainder(theta_m1 - std::numbers::pi / 2, 2 * std::numbers::pi)) < 1e-12) {
            const double theta_p1 = s1.theta_a + s1.theta_b;
            const double theta_p2 = s2.theta_a + s2.theta_b;
            const double theta_m2 = s2.theta_a - s2.theta_b;
            nlohmann::json rsr = {{"theta_plus_1", theta_p1}, {"theta_plus_2", theta_p2}, {"theta_minus_2", theta_m2}};
            const double t = std::tan(0.5 * theta_m2);
            if (t > 0) {
                const double half = -std::numbers::pi / 2 - 0.5 * theta_p2;
                Eigen::Matrix2d target = rotation(half) * squeeze(std::log(t)) * rotation(half - theta_p1);
                Eigen::Matrix2d gate = plan_gate(cfg.pipeline, per_rail.begin()->second).symplectic;
                double residual = (gate - target).cwiseAbs().maxCoeff();
                rsr["target"] = matrix_json(target);
                rsr["residual"] = residual;
                out << "R S R residual " << format_double(residual) << "\n";
            } else {
                rsr["residual"] = nullptr;
                rsr["reason"] = "tan(theta_minus_2 / 2) <= 0";
                out << "R S R residual undefined: tan(theta_minus_2 / 2) <= 0\n";
            }
            report["rsr"] = rsr;
        }
    }
    write_text_file((dir / "gate_report.json").string(), json_text(report));
    for (const auto &r : rails) {
        if (r.contains("gate")) {
            out << "rail " << r["rail"].get<int>() << " gate " << r["gate"]["symplectic"].dump() << " det "
                << format_double(r["gate"]["det"].get<double>()) << "\n";
        }
    }
    return kExitOk;
}

int cmd_graph(const RunConfig &cfg, const std::string &out_dir, std::ostream &out) {
    const std::filesystem::path dir = prepare(out_dir);
    PipelineResult built = build(cfg.pipeline);
    ClusterGraph graph = cluster_graph(built, cfg.graph);
    const Eigen::MatrixXd &w = graph.adjacency.weights;
    nlohmann::json doc = adjacency_to_json(w, built.registry(), cfg.graph.threshold);
    doc["rotation"] = graph.metadata();
    const size_t comps = components(w, cfg.graph.threshold).size();
    doc["components"] = comps;
    out << "cluster adjacency: " << built.state.num_modes() << " modes, " << comps << " component(s)";
    if (cfg.pipeline.kind == PipelineKind::kThreeD) {
        PortSetReport ports = port_set_connectivity(built.trace, w, cfg.graph.threshold);
        doc["port_sets"] = {{"port_classes", ports.port_classes},
                            {"components", ports.components},
                            {"mode_components", ports.mode_components}};
        out << ", array sets " << ports.port_classes << " in " << ports.components << " component(s)";
        std::map<size_t, size_t> sizes;
        for (const auto &c : macronode_components(built, cfg.graph.threshold)) {
            sizes[c.size()]++;
        }
        nlohmann::json hist = nlohmann::json::object();
        for (auto [size, count] : sizes) {
            hist[std::to_string(size)] = count;
        }
        doc["macronode_basis"] = {{"component_sizes", hist},
                                  {"all_four_mode", sizes.size() == 1 && sizes.begin()->first == 4}};
    }
    out << "\n";
    write_text_file((dir / "graph.json").string(), json_text(doc));
    write_text_file((dir / "edges.csv").string(), edges_to_csv(w, built.registry(), cfg.graph.threshold));
    return kExitOk;
}

}  // namespace cvforge
