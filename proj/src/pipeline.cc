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


#include "cvforge/pipeline.h"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cvforge/io.h"
#include "cvforge/parallel.h"

namespace cvforge {

std::string to_string(PipelineKind kind) {
    return kind == PipelineKind::kOneD ? "oneD" : "threeD";
}

PipelineConfig PipelineConfig::one_d(int n_max, int n_bins, double r) {
    PipelineConfig cfg;
    cfg.kind = PipelineKind::kOneD;
    cfg.n_max = n_max;
    cfg.n_bins = n_bins;
    cfg.nopas = {NopaSettings{Nopa::kN1, 0, r, r, std::numbers::pi}};
    return cfg;
}

PipelineConfig PipelineConfig::three_d(int n_max, int n_bins, double r) {
    PipelineConfig cfg;
    cfg.kind = PipelineKind::kThreeD;
    cfg.n_max = n_max;
    cfg.n_bins = n_bins;
    cfg.nopas = {NopaSettings{Nopa::kN1, +1, r, r, std::numbers::pi}, NopaSettings{Nopa::kN2, -1, r, r, 0.0}};
    return cfg;
}

PipelineConfig PipelineConfig::with_r(double r) const {
    PipelineConfig out = *this;
    for (NopaSettings &n : out.nopas) {
        n.r_signal = r;
        n.r_idler = r;
    }
    return out;
}

LatticeConfig PipelineConfig::lattice() const {
    LatticeConfig lc;
    lc.n_max = n_max;
    lc.n_bins = n_bins;
    lc.pump_offset = nopas.empty() ? 0 : nopas.front().pump_offset;
    lc.metadata = metadata;
    return lc;
}

void PipelineConfig::validate() const {
    lattice().validate();
    if (n_bins < 2) {
        throw std::invalid_argument("pipeline: n_bins must be >= 2 (a delay needs a following bin), got " +
                                    std::to_string(n_bins));
    }
    for (const NopaSettings &n : nopas) {
        if (!std::isfinite(n.r_signal) || !std::isfinite(n.r_idler) || n.r_signal < 0 || n.r_idler < 0) {
            throw std::invalid_argument("pipeline: squeezing parameters must be finite and >= 0");
        }
        if (!std::isfinite(n.delay_phase)) {
            throw std::invalid_argument("pipeline: delay phase must be finite");
        }
    }
    if (kind == PipelineKind::kOneD) {
        if (nopas.size() != 1) {
            throw std::invalid_argument("pipeline: oneD requires exactly one squeezer, got " +
                                        std::to_string(nopas.size()));
        }
        return;
    }
    if (nopas.size() != 2) {
        throw std::invalid_argument("pipeline: threeD requires exactly two squeezers, got " +
                                    std::to_string(nopas.size()));
    }
    if (nopas[0].id == nopas[1].id) {
        throw std::invalid_argument("pipeline: threeD squeezers must be N1 and N2");
    }
    if (nopas[0].pump_offset + nopas[1].pump_offset != 0) {
        throw std::invalid_argument("pipeline: threeD pump offsets must sum to 0");
    }
}

namespace {

ModeId sig(Nopa nopa, int n, int k) {
    return ModeId{nopa, Field::kSignal, n, k};
}

ModeId idl(Nopa nopa, int n, int k) {
    return ModeId{nopa, Field::kIdler, n, k};
}

void squeezer_stage(const ModeRegistry &reg, PipelineTrace &trace, const NopaSettings &nopa, int n_max, int n_bins) {
    PairingTable table = pairing_table(n_max, nopa.pump_offset);
    for (int n : table.rejected) {
        trace.rejected(n, pair_partner(n, nopa.pump_offset), to_string(nopa.id));
    }
    for (int k = 0; k < n_bins; k++) {
        for (auto [n, m] : table.pairs) {
            trace.squeeze(reg.index(sig(nopa.id, n, k)), reg.index(idl(nopa.id, m, k)), nopa.r_signal, nopa.r_idler,
                          to_string(nopa.id));
        }
    }
}

void delay_stage(const ModeRegistry &reg, PipelineTrace &trace, const NopaSettings &nopa) {
    DelayRelabel d = delay_relabel(reg, Field::kIdler, nopa.id, 1);
    for (size_t w : d.wrapped) {
        if (!reg.is_edge(w)) {
            throw std::logic_error("delay wrapped into a non-edge slot");
        }
    }
    trace.delay(d, 1, to_string(nopa.id) + ":idler");
}

void dual_rail_stage(const ModeRegistry &reg, PipelineTrace &trace, const NopaSettings &nopa, int n_max, int n_bins) {
    for (int k = 1; k < n_bins; k++) {
        for (int n = -n_max; n <= n_max; n++) {
            size_t s = reg.index(sig(nopa.id, n, k));
            size_t i = reg.index(idl(nopa.id, n, k));
            if (reg.is_edge(s) || reg.is_edge(i)) {
                continue;
            }
            if (nopa.delay_phase != 0) {
                trace.phase(i, nopa.delay_phase, "delay_phase");
            }
            trace.beamsplitter(s, i, "bs1d");
        }
    }
}

PipelineProgram program_common(const PipelineConfig &cfg) {
    cfg.validate();
    std::vector<Nopa> ids;
    for (const NopaSettings &n : cfg.nopas) {
        ids.push_back(n.id);
    }
    PipelineProgram prog;
    prog.registry = enumerate_modes(cfg.lattice(), ids);
    for (const NopaSettings &n : cfg.nopas) {
        squeezer_stage(prog.registry, prog.trace, n, cfg.n_max, cfg.n_bins);
    }
    for (const NopaSettings &n : cfg.nopas) {
        delay_stage(prog.registry, prog.trace, n);
    }
    prog.trace.checkpoint(kPreBeamsplitter);
    for (const NopaSettings &n : cfg.nopas) {
        dual_rail_stage(prog.registry, prog.trace, n, cfg.n_max, cfg.n_bins);
    }
    return prog;
}

}  // namespace

PipelineProgram program_1d(const PipelineConfig &cfg) {
    if (cfg.kind != PipelineKind::kOneD) {
        throw std::invalid_argument("build_1d: config kind is " + to_string(cfg.kind));
    }
    return program_common(cfg);
}

PipelineProgram program_3d(const PipelineConfig &cfg) {
    if (cfg.kind != PipelineKind::kThreeD) {
        throw std::invalid_argument("build_3d: config kind is " + to_string(cfg.kind));
    }
    PipelineProgram prog = program_common(cfg);
    const ModeRegistry &reg = prog.registry;
    const Nopa n1 = cfg.nopas[0].id;
    const Nopa n2 = cfg.nopas[1].id;
    // Cross couplers. The orientation alternates with bin parity so that the
    // second output of one bin feeds the first input of the next layer.
    for (int k = 1; k < cfg.n_bins; k++) {
        for (int n = -cfg.n_max; n <= cfg.n_max; n++) {
            size_t s1 = reg.index(sig(n1, n, k));
            size_t i1 = reg.index(idl(n1, n, k));
            size_t s2 = reg.index(sig(n2, n, k));
            size_t i2 = reg.index(idl(n2, n, k));
            if (k % 2 == 0) {
                prog.trace.beamsplitter(s1, i2, "bs3");
                prog.trace.beamsplitter(i1, s2, "bs4");
            } else {
                prog.trace.beamsplitter(s2, i1, "bs4");
                prog.trace.beamsplitter(i2, s1, "bs3");
            }
        }
    }
    return prog;
}

PipelineResult build_1d(const PipelineConfig &cfg) {
    PipelineProgram prog = program_1d(cfg);
    return PipelineResult{replay(prog.registry, prog.trace), std::move(prog.trace)};
}

PipelineResult build_3d(const PipelineConfig &cfg) {
    PipelineProgram prog = program_3d(cfg);
    return PipelineResult{replay(prog.registry, prog.trace), std::move(prog.trace)};
}

PipelineResult build(const PipelineConfig &cfg) {
    return cfg.kind == PipelineKind::kOneD ? build_1d(cfg) : build_3d(cfg);
}

NullifierSet pipeline_nullifiers(const PipelineConfig &cfg, const ModeRegistry &registry) {
    if (cfg.kind == PipelineKind::kOneD) {
        return nullifiers_1d(registry, cfg.nopas.at(0).id, cfg.nopas.at(0).pump_offset);
    }
    // The bilayer families are defined for the detuned-pump layout only.
    if (cfg.nopas.at(0).pump_offset == 1 && cfg.nopas.at(1).pump_offset == -1 && cfg.nopas[0].id == Nopa::kN1) {
        return nullifiers_3d(registry);
    }
    return NullifierSet{};
}

double squeezing_db(double r) {
    return 20.0 * r / std::numbers::ln10;
}

std::string VarianceTable::to_csv() const {
    std::ostringstream out;
    out << "r,db,family,k,variance,bound\n";
    for (const VarianceRow &row : rows) {
        out << format_double(row.r) << ',' << format_double(row.db) << ',' << row.family << ',' << row.k << ','
            << format_double(row.variance) << ',' << format_double(row.bound) << '\n';
    }
    return out.str();
}

VarianceTable sweep(const PipelineConfig &cfg, const std::vector<double> &r_grid, size_t threads) {
    if (r_grid.empty()) {
        throw std::invalid_argument("sweep: empty grid");
    }
    cfg.validate();
    std::vector<std::vector<VarianceRow>> per_point(r_grid.size());
    parallel_for(r_grid.size(), threads, [&](size_t idx) {
        const double r = r_grid[idx];
        PipelineResult built = build(cfg.with_r(r));
        NullifierSet set = pipeline_nullifiers(cfg, built.registry());
        for (const Nullifier &n : set.items) {
            VarianceRow row;
            row.r = r;
            row.db = squeezing_db(r);
            row.family = n.family + "[rail=" + std::to_string(n.rail) + "]";
            row.k = n.k;
            row.variance = quadrature_variance(built.state, n.terms);
            per_point[idx].push_back(std::move(row));
        }
    });
    VarianceTable table;
    for (auto &rows : per_point) {
        for (auto &row : rows) {
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace cvforge
