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


#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "cvforge/commands.h"
#include "cvforge/io.h"

namespace {

struct Options {
    std::string config;
    std::optional<std::string> out;
    std::optional<uint64_t> seed;
    std::optional<double> r_min;
    std::optional<double> r_max;
    std::optional<int> steps;
    std::string plan;
};

void common_flags(CLI::App *cmd, Options &opt) {
    cmd->add_option("--config", opt.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out, "Output directory (overrides the config)");
    cmd->add_option("--seed", opt.seed, "Seed for sampled homodyne outcomes (overrides the config)");
}

cvforge::RunConfig load(const Options &opt) {
    cvforge::RunConfig cfg = cvforge::load_run_config(opt.config);
    if (opt.out) {
        cfg.out = *opt.out;
    }
    if (opt.seed) {
        cfg.seed = *opt.seed;
    }
    return cfg;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Time/frequency-multiplexed CV cluster-state simulator"};
    app.require_subcommand(1);
    Options opt;

    CLI::App *build = app.add_subcommand("build", "Build a cluster state and export covariance, registry, trace, edges");
    common_flags(build, opt);
    CLI::App *sweep = app.add_subcommand("sweep", "Nullifier variances over a squeezing grid and the VLF threshold");
    common_flags(sweep, opt);
    sweep->add_option("--r-min", opt.r_min, "Lowest squeezing parameter");
    sweep->add_option("--r-max", opt.r_max, "Highest squeezing parameter");
    sweep->add_option("--steps", opt.steps, "Grid points");
    CLI::App *mbqc = app.add_subcommand("mbqc", "Run a teleportation plan on the wire of a oneD config");
    common_flags(mbqc, opt);
    mbqc->add_option("--plan", opt.plan, "Measurement plan (JSON)")->required()->check(CLI::ExistingFile);
    CLI::App *graph = app.add_subcommand("graph", "Export the cluster adjacency and its connectivity");
    common_flags(graph, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? cvforge::kExitOk : cvforge::kExitError;
    }

    try {
        cvforge::RunConfig cfg = load(opt);
        if (build->parsed()) {
            return cvforge::cmd_build(cfg, cfg.out, std::cout);
        }
        if (sweep->parsed()) {
            cvforge::SweepSettings s = cfg.sweep;
            s.r_min = opt.r_min.value_or(s.r_min);
            s.r_max = opt.r_max.value_or(s.r_max);
            s.steps = opt.steps.value_or(s.steps);
            return cvforge::cmd_sweep(cfg, s, cfg.out, std::cout, std::cerr);
        }
        if (mbqc->parsed()) {
            nlohmann::json plan;
            try {
                plan = nlohmann::json::parse(cvforge::read_text_file(opt.plan));
            } catch (const nlohmann::json::parse_error &e) {
                throw std::invalid_argument("plan: " + opt.plan + " is not valid JSON: " + e.what());
            }
            return cvforge::cmd_mbqc(cfg, plan, cfg.out, std::cout);
        }
        return cvforge::cmd_graph(cfg, cfg.out, std::cout);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return cvforge::kExitError;
    }
}
