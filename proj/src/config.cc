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


#include "cvforge/config.h"

#include <cmath>
#include <set>

#include "cvforge/io.h"

namespace cvforge {

namespace {

void reject_unknown(const nlohmann::json &j, const std::set<std::string> &allowed, const std::string &where) {
    if (!j.is_object()) {
        throw ConfigError("config: " + where + " must be an object");
    }
    for (const auto &[key, _] : j.items()) {
        if (!allowed.count(key)) {
            std::string list;
            for (const std::string &a : allowed) {
                list += (list.empty() ? "" : ", ") + a;
            }
            throw ConfigError("config: unknown key '" + where + key + "' (allowed: " + list + ")");
        }
    }
}

double number(const nlohmann::json &j, const std::string &key, double fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const auto &v = j.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
        throw ConfigError("config: '" + key + "' must be a finite number");
    }
    return v.get<double>();
}

double non_negative(const nlohmann::json &j, const std::string &key, double fallback) {
    double v = number(j, key, fallback);
    if (v < 0) {
        throw ConfigError("config: '" + key + "' must be >= 0");
    }
    return v;
}

int integer(const nlohmann::json &j, const std::string &key, int fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const auto &v = j.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError("config: '" + key + "' must be an integer");
    }
    return v.get<int>();
}

template <typename T>
std::vector<T> list(const nlohmann::json &j, const std::string &key, size_t expected) {
    const auto &v = j.at(key);
    if (!v.is_array() || v.size() != expected) {
        throw ConfigError("config: '" + key + "' must be a list of " + std::to_string(expected) + " values");
    }
    std::vector<T> out;
    for (const auto &e : v) {
        if constexpr (std::is_integral_v<T>) {
            if (!e.is_number_integer()) {
                throw ConfigError("config: '" + key + "' entries must be integers");
            }
        } else {
            if (!e.is_number() || !std::isfinite(e.get<double>())) {
                throw ConfigError("config: '" + key + "' entries must be finite numbers");
            }
        }
        out.push_back(e.get<T>());
    }
    return out;
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json &j) {
    reject_unknown(j,
                   {"kind", "n_max", "n_bins", "r", "r_signal", "r_idler", "pump_offsets", "delay_phases", "metadata",
                    "seed", "out", "sweep", "graph"},
                   "");
    if (!j.contains("kind")) {
        throw ConfigError("config: missing required key 'kind' (\"oneD\" or \"threeD\")");
    }
    const auto &kind = j.at("kind");
    if (!kind.is_string() || (kind.get<std::string>() != "oneD" && kind.get<std::string>() != "threeD")) {
        throw ConfigError("config: 'kind' must be \"oneD\" or \"threeD\", got " + kind.dump());
    }
    const int n_max = integer(j, "n_max", 1);
    const int n_bins = integer(j, "n_bins", 8);
    const double r = non_negative(j, "r", 1.0);

    RunConfig rc;
    rc.pipeline = kind.get<std::string>() == "oneD" ? PipelineConfig::one_d(n_max, n_bins, r)
                                                    : PipelineConfig::three_d(n_max, n_bins, r);
    for (NopaSettings &n : rc.pipeline.nopas) {
        n.r_signal = non_negative(j, "r_signal", r);
        n.r_idler = non_negative(j, "r_idler", r);
    }
    const size_t count = rc.pipeline.nopas.size();
    if (j.contains("pump_offsets")) {
        auto d = list<int>(j, "pump_offsets", count);
        for (size_t i = 0; i < count; i++) {
            rc.pipeline.nopas[i].pump_offset = d[i];
        }
    }
    if (j.contains("delay_phases")) {
        auto phases = list<double>(j, "delay_phases", count);
        for (size_t i = 0; i < count; i++) {
            rc.pipeline.nopas[i].delay_phase = phases[i];
        }
    }
    if (j.contains("metadata")) {
        const auto &m = j.at("metadata");
        reject_unknown(m,
                       {"fsr_hz", "bin_period_s", "nonlinear_coefficient", "pump_parameter", "crystal_length_m",
                        "cavity_length_m"},
                       "metadata.");
        LatticeMetadata &md = rc.pipeline.metadata;
        md.fsr_hz = non_negative(m, "fsr_hz", 0);
        md.bin_period_s = non_negative(m, "bin_period_s", 0);
        md.nonlinear_coefficient = number(m, "nonlinear_coefficient", 0);
        md.pump_parameter = non_negative(m, "pump_parameter", 0);
        md.crystal_length_m = non_negative(m, "crystal_length_m", 0);
        md.cavity_length_m = non_negative(m, "cavity_length_m", 0);
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) {
            throw ConfigError("config: 'seed' must be a non-negative integer");
        }
        rc.seed = j.at("seed").get<uint64_t>();
    }
    if (j.contains("out")) {
        if (!j.at("out").is_string() || j.at("out").get<std::string>().empty()) {
            throw ConfigError("config: 'out' must be a non-empty string");
        }
        rc.out = j.at("out").get<std::string>();
    }
    if (j.contains("sweep")) {
        const auto &s = j.at("sweep");
        reject_unknown(s, {"r_min", "r_max", "steps", "tol"}, "sweep.");
        rc.sweep.r_min = non_negative(s, "r_min", rc.sweep.r_min);
        rc.sweep.r_max = non_negative(s, "r_max", rc.sweep.r_max);
        rc.sweep.steps = integer(s, "steps", rc.sweep.steps);
        rc.sweep.tol = number(s, "tol", rc.sweep.tol);
        if (!(rc.sweep.tol > 0)) {
            throw ConfigError("config: 'sweep.tol' must be > 0");
        }
    }
    if (j.contains("graph")) {
        const auto &g = j.at("graph");
        reject_unknown(g, {"threshold", "mask_class"}, "graph.");
        rc.graph.threshold = non_negative(g, "threshold", rc.graph.threshold);
        rc.graph.mask_class = integer(g, "mask_class", rc.graph.mask_class);
        if (rc.graph.mask_class != 0 && rc.graph.mask_class != 1) {
            throw ConfigError("config: 'graph.mask_class' must be 0 or 1");
        }
    }
    try {
        rc.pipeline.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return rc;
}

nlohmann::json run_config_to_json(const RunConfig &rc) {
    const PipelineConfig &p = rc.pipeline;
    nlohmann::json offsets = nlohmann::json::array();
    nlohmann::json phases = nlohmann::json::array();
    for (const NopaSettings &n : p.nopas) {
        offsets.push_back(n.pump_offset);
        phases.push_back(n.delay_phase);
    }
    nlohmann::json j = {{"kind", to_string(p.kind)},
                        {"n_max", p.n_max},
                        {"n_bins", p.n_bins},
                        {"r_signal", p.nopas.front().r_signal},
                        {"r_idler", p.nopas.front().r_idler},
                        {"pump_offsets", offsets},
                        {"delay_phases", phases},
                        {"metadata",
                         {{"fsr_hz", p.metadata.fsr_hz},
                          {"bin_period_s", p.metadata.bin_period_s},
                          {"nonlinear_coefficient", p.metadata.nonlinear_coefficient},
                          {"pump_parameter", p.metadata.pump_parameter},
                          {"crystal_length_m", p.metadata.crystal_length_m},
                          {"cavity_length_m", p.metadata.cavity_length_m}}},
                        {"seed", rc.seed},
                        {"out", rc.out},
                        {"sweep",
                         {{"r_min", rc.sweep.r_min},
                          {"r_max", rc.sweep.r_max},
                          {"steps", rc.sweep.steps},
                          {"tol", rc.sweep.tol}}},
                        {"graph", {{"threshold", rc.graph.threshold}, {"mask_class", rc.graph.mask_class}}}};
    return j;
}

RunConfig load_run_config(const std::string &path) {
    std::string text = read_text_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("config: " + path + " is not valid JSON: " + e.what());
    }
    return run_config_from_json(j);
}

}  // namespace cvforge
