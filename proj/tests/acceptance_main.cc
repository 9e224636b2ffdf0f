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


// Acceptance criteria AC-1..AC-8. One line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cvforge/graph.h"
#include "cvforge/mbqc.h"
#include "cvforge/pipeline.h"
#include "cvforge/tolerances.h"
#include "cvforge/verify.h"
#include "oracle.h"

namespace cvforge {
namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Outcome ac1() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    size_t count = 0;
    for (int n_max : {0, 1}) {
        for (double r : {0.0, 0.25, 0.5, 1.0, 2.0}) {
            PipelineConfig cfg = PipelineConfig::one_d(n_max, 20, r);
            PipelineResult b = build(cfg);
            for (const Nullifier &n : pipeline_nullifiers(cfg, b.registry()).items) {
                worst = std::max(worst, std::abs(quadrature_variance(b.state, n.terms) - 2 * std::exp(-2 * r)));
                count++;
            }
        }
    }
    const double t = seconds_since(t0);
    return {count > 0 && worst <= 1e-9 && t < 10,
            std::to_string(count) + " nullifiers, max |var - 2e^-2r| = " + fmt(worst) + ", " + fmt(t) + " s"};
}

Outcome ac2() {
    const double r = 0.8;
    double spread = 0;
    size_t count = 0;
    for (int n_bins : {10, 50, 200}) {
        PipelineConfig cfg = PipelineConfig::one_d(1, n_bins, r);
        PipelineResult b = build(cfg);
        std::map<std::string, double> first;
        for (const Nullifier &n : pipeline_nullifiers(cfg, b.registry()).items) {
            double v = quadrature_variance(b.state, n.terms);
            // One reference per family across every bin and every rail.
            auto [it, fresh] = first.emplace(n.family, v);
            spread = std::max(spread, std::abs(v - it->second));
            count++;
        }
    }
    return {count > 0 && spread <= 1e-10,
            std::to_string(count) + " nullifiers over N_bins {10,50,200} x 3 rails, max spread " + fmt(spread)};
}

Outcome ac3() {
    double worst = 0;
    bool structure = true;
    for (int i = 0; i <= 12; i++) {
        const double r = 0.25 * i;
        PipelineProgram prog = program_1d(PipelineConfig::one_d(1, 6, r));
        GaussianState pre = replay(prog.registry, prog.trace, kPreBeamsplitter);
        HGraph g = hgraph_from_trace(prog.trace, prog.registry.size(), kPreBeamsplitter);
        structure = structure && check_self_inverse(g) && check_bipartite(g).bipartite;
        worst = std::max(worst, (z_from_hgraph(g, r).z - z_from_state(pre).z).cwiseAbs().maxCoeff());
    }
    return {structure && worst <= 1e-9,
            "r in [0,3] (13 points): max |Z_sim - Z_closed| = " + fmt(worst) +
                ", G self-inverse and bipartite: " + (structure ? "yes" : "no")};
}

Outcome ac4() {
    Threshold one = find_threshold(PipelineConfig::one_d(1, 6, 0), 1e-9);
    Threshold three = find_threshold(PipelineConfig::three_d(1, 6, 0), 1e-9);
    bool ok = std::abs(one.db - 3.0103) <= 0.01 && std::abs(three.db - 6.0206) <= 0.01;
    std::ostringstream d;
    d.precision(6);
    d << "1D r* = " << one.r << " (" << one.db << " dB), 3D r* = " << three.r << " (" << three.db << " dB)";
    return {ok, d.str()};
}

Outcome ac5() {
    auto t0 = std::chrono::steady_clock::now();
    double var_err = 0;
    std::set<std::string> families;
    for (double r : {0.0, 0.5, 1.0, 2.0}) {
        PipelineConfig cfg = PipelineConfig::three_d(1, 6, r);
        PipelineResult b = build(cfg);
        for (const Nullifier &n : pipeline_nullifiers(cfg, b.registry()).items) {
            families.insert(n.family);
            var_err = std::max(var_err, std::abs(quadrature_variance(b.state, n.terms) - 4 * std::exp(-2 * r)));
        }
    }
    PipelineResult b = build(PipelineConfig::three_d(1, 6, 3.5));
    HGraph h = propagate_hgraph(b.trace, b.state.num_modes());
    std::vector<size_t> mask = default_rotation_mask(h);
    ClusterAdjacency adj = cluster_adjacency(z_from_state(b.state), mask, h);
    Eigen::MatrixXd limit = asymptotic_cluster_weights(h, mask);
    double weight_err = 0;
    size_t quarter = 0, other = 0, edge = 0;
    const auto m = adj.weights.rows();
    for (Eigen::Index i = 0; i < m; i++) {
        for (Eigen::Index j = i + 1; j < m; j++) {
            if (b.registry().is_edge(i) || b.registry().is_edge(j)) {
                edge += std::abs(limit(i, j)) > 0;
                continue;
            }
            weight_err = std::max(weight_err, std::abs(adj.weights(i, j) - limit(i, j)));
            if (std::abs(limit(i, j)) > 0) {
                (std::abs(std::abs(limit(i, j)) - 0.25) < 1e-12 ? quarter : other)++;
            }
        }
    }
    const double t = seconds_since(t0);
    bool ok = families.size() == 4 && var_err <= 1e-9 && weight_err <= 1e-2 && quarter > 0 && other == 0 && t < 60;
    return {ok, std::to_string(families.size()) + " families, max |var - 4e^-2r| = " + fmt(var_err) + "; r=3.5: " +
                    std::to_string(quarter) + " interior edges at +-1/4, " + std::to_string(other) +
                    " other, max weight error " + fmt(weight_err) + " (" + std::to_string(edge) +
                    " edge-bin entries excluded), " + fmt(t) + " s"};
}

Outcome ac6() {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> plus(-kPi, kPi);
    std::uniform_real_distribution<double> minus(kPi / 8, 7 * kPi / 8);
    struct Triple {
        double p1, p2, m2;
    };
    std::vector<Triple> triples;
    for (int i = 0; i < 100; i++) {
        triples.push_back({plus(rng), plus(rng), minus(rng)});
    }
    double worst = 0;
    std::vector<double> rs = {4, 5, 6, 7, 8};
    std::vector<double> log_mean;
    for (double r : rs) {
        double sum = 0;
        for (const Triple &t : triples) {
            double res = verify_rsr_composition(t.p1, t.p2, t.m2, r).residual;
            sum += res;
            if (r == 8) {
                worst = std::max(worst, res);
            }
        }
        log_mean.push_back(std::log(sum / triples.size()));
    }
    double mx = 0, my = 0;
    for (size_t i = 0; i < rs.size(); i++) {
        mx += rs[i] / rs.size();
        my += log_mean[i] / rs.size();
    }
    double num = 0, den = 0;
    for (size_t i = 0; i < rs.size(); i++) {
        num += (rs[i] - mx) * (log_mean[i] - my);
        den += (rs[i] - mx) * (rs[i] - mx);
    }
    const double slope = num / den;
    return {worst <= 1e-4 && std::abs(slope + 2) <= 0.05,
            "100 triples at r=8: max residual " + fmt(worst) + "; slope over r in [4,8]: " + fmt(slope)};
}

Outcome ac7() {
    const double threshold = 1e-6;
    auto report = [&](int d1, int d2) {
        PipelineConfig cfg = PipelineConfig::three_d(1, 6, 3.5);
        cfg.nopas[0].pump_offset = d1;
        cfg.nopas[1].pump_offset = d2;
        PipelineResult b = build(cfg);
        HGraph h = propagate_hgraph(b.trace, b.state.num_modes());
        ClusterAdjacency adj = cluster_adjacency(z_from_state(b.state), default_rotation_mask(h), h);
        return port_set_connectivity(b.trace, adj.weights, threshold);
    };
    PortSetReport detuned = report(1, -1);
    PortSetReport same = report(0, 0);
    return {detuned.components == 1 && same.components == 2,
            "array-set components: d=+-1 -> " + std::to_string(detuned.components) + ", same pump -> " +
                std::to_string(same.components) + " (mode-level: " + std::to_string(detuned.mode_components) +
                " vs " + std::to_string(same.mode_components) + ")"};
}

Outcome ac8() {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> modes(1, 5);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    std::uniform_real_distribution<double> sq(0.0, 1.0);
    std::normal_distribution<double> gauss;
    size_t passed = 0;
    const size_t trials = 10000;
    double worst_sym = 0, worst_purity = 0, worst_comm = 0;
    for (size_t t = 0; t < trials; t++) {
        const size_t m = static_cast<size_t>(modes(rng));
        std::vector<ModeId> ids;
        for (size_t i = 0; i < m; i++) {
            ids.push_back(ModeId{Nopa::kN1, Field::kSignal, static_cast<int>(i), 0});
        }
        GaussianState st = GaussianState::vacuum(ModeRegistry(ids));
        Eigen::MatrixXd total = Eigen::MatrixXd::Identity(2 * m, 2 * m);
        std::uniform_int_distribution<size_t> pick(0, m - 1);
        for (int d = 0; d < 6; d++) {
            size_t i = pick(rng), j = pick(rng);
            SymplecticOp op = (m > 1 && i != j)
                                  ? (d % 2 ? two_mode_squeeze(i, j, sq(rng), sq(rng)) : beamsplitter(i, j))
                                  : phase_rotate(i, ang(rng));
            total = op.dense(m) * total;
            st.apply(op);
        }
        st.displace(pick(rng), gauss(rng), gauss(rng));
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * m, 2 * m);
        w.topRightCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
        w.bottomLeftCorner(m, m) = -Eigen::MatrixXd::Identity(m, m);
        const double sym = (total * w * total.transpose() - w).cwiseAbs().maxCoeff() /
                           std::max(1.0, total.cwiseAbs().maxCoeff() * total.cwiseAbs().maxCoeff());
        const Eigen::MatrixXd expect = 0.5 * total * total.transpose();
        const double cov_err = (Eigen::MatrixXd(st.cov()) - expect).cwiseAbs().maxCoeff() /
                               std::max(1.0, expect.cwiseAbs().maxCoeff());
        const double purity = purity_defect(st);
        double comm = 0;
        if (m >= 2) {
            const size_t a = pick(rng);
            size_t c = pick(rng);
            if (c == a) {
                c = (a + 1) % m;
            }
            const double theta = ang(rng);
            const double value = gauss(rng);
            HomodyneResult h1 = homodyne(st, st.registry().mode(a), theta, value);
            GaussianState x = discard(h1.state, st.registry().mode(c));
            GaussianState marg = discard(st, st.registry().mode(c));
            HomodyneResult h2 = homodyne(marg, st.registry().mode(a), theta, value);
            if (x.num_modes() > 0) {
                comm = std::max((Eigen::MatrixXd(x.cov()) - Eigen::MatrixXd(h2.state.cov())).cwiseAbs().maxCoeff(),
                                (x.mean() - h2.state.mean()).cwiseAbs().maxCoeff());
            }
            comm = std::max(comm, std::abs(h1.marginal_variance - h2.marginal_variance));
            comm = std::max(comm, std::abs(h1.marginal_mean - h2.marginal_mean));
            QuadCombination q = {{st.registry().mode(a), Quad::kX, std::cos(theta)},
                                 {st.registry().mode(a), Quad::kP, std::sin(theta)}};
            comm = std::max(comm, std::abs(h1.marginal_variance - quadrature_variance(st, q)));
            // A pure state stays pure after a homodyne measurement.
            comm = std::max(comm, purity_defect(h1.state));
            comm = std::max(comm, (Eigen::MatrixXd(h1.state.cov()) -
                                   oracle::homodyne_cov(Eigen::MatrixXd(st.cov()), a, theta))
                                      .cwiseAbs()
                                      .maxCoeff());
        }
        worst_sym = std::max(worst_sym, sym);
        worst_purity = std::max(worst_purity, purity);
        worst_comm = std::max(worst_comm, comm);
        passed += sym <= tol::kStructural && cov_err <= 1e-8 && purity <= 1e-8 && comm <= 1e-8;
    }
    return {passed == trials, std::to_string(passed) + "/" + std::to_string(trials) +
                                  " randomized trials; worst S Omega S^T defect " + fmt(worst_sym) +
                                  ", purity defect " + fmt(worst_purity) + ", homodyne/marginal " + fmt(worst_comm)};
}

}  // namespace
}  // namespace cvforge

int main() {
    using cvforge::Outcome;
    const std::pair<const char *, std::function<Outcome()>> criteria[] = {
        {"AC-1", cvforge::ac1}, {"AC-2", cvforge::ac2}, {"AC-3", cvforge::ac3}, {"AC-4", cvforge::ac4},
        {"AC-5", cvforge::ac5}, {"AC-6", cvforge::ac6}, {"AC-7", cvforge::ac7}, {"AC-8", cvforge::ac8},
    };
    int failures = 0;
    for (const auto &[name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception &e) {
            o = {false, std::string("error: ") + e.what()};
        }
        std::printf("%s %s: %s\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
