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


#include "cvforge/graph.h"

#include <gtest/gtest.h>

#include <numbers>

#include "cvforge/pipeline.h"
#include "oracle.h"

namespace cvforge {
namespace {

HGraph cycle(size_t n) {
    HGraph g{Eigen::MatrixXd::Zero(n, n)};
    for (size_t i = 0; i < n; i++) {
        g.adjacency(i, (i + 1) % n) = g.adjacency((i + 1) % n, i) = 1;
    }
    return g;
}

TEST(Graph, BipartiteChecks) {
    BipartiteCheck even = check_bipartite(cycle(4));
    EXPECT_TRUE(even.bipartite);
    EXPECT_EQ(even.coloring, (std::vector<int>{0, 1, 0, 1}));
    BipartiteCheck odd = check_bipartite(cycle(3));
    EXPECT_FALSE(odd.bipartite);
    EXPECT_EQ(odd.odd_cycle.size() % 2, 1u);
    EXPECT_THROW(default_rotation_mask(cycle(5)), std::invalid_argument);
}

TEST(Graph, PreBeamsplitterGraphIsAPerfectMatching) {
    PipelineConfig cfg = PipelineConfig::one_d(1, 4, 0.7);
    PipelineProgram prog = program_1d(cfg);
    HGraph g = hgraph_from_trace(prog.trace, prog.registry.size(), kPreBeamsplitter);
    EXPECT_TRUE(check_self_inverse(g));
    EXPECT_TRUE(check_bipartite(g).bipartite);
    for (Eigen::Index i = 0; i < g.adjacency.rows(); i++) {
        EXPECT_EQ(g.adjacency.row(i).cwiseAbs().sum(), 1.0);
    }
}

TEST(Graph, ClosedFormMatchesSimulatedGraph) {
    PipelineConfig cfg = PipelineConfig::one_d(1, 4, 0);
    for (double r : {0.0, 0.4, 1.3, 3.0}) {
        PipelineProgram prog = program_1d(cfg.with_r(r));
        GaussianState pre = replay(prog.registry, prog.trace, kPreBeamsplitter);
        HGraph g = hgraph_from_trace(prog.trace, prog.registry.size(), kPreBeamsplitter);
        ComplexGraph a = z_from_hgraph(g, r);
        ComplexGraph b = z_from_state(pre);
        EXPECT_LT((a.z - b.z).cwiseAbs().maxCoeff(), 1e-9) << "r=" << r;
    }
}

TEST(Graph, ZFromHgraphNamesFailingCheck) {
    try {
        z_from_hgraph(cycle(3), 0.5);
        FAIL();
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("self-inverse"), std::string::npos) << e.what();
    }
}

TEST(Graph, ZFromStateRejectsMixedStates) {
    PipelineResult r = build(PipelineConfig::one_d(0, 2, 0.5));
    GaussianState mixed = discard(r.state, r.registry().mode(0));
    EXPECT_THROW(z_from_state(mixed), std::invalid_argument);
}

TEST(Graph, ZFromStateMatchesDenseOracle) {
    // Two-mode squeezed vacuum: Z = i [[cosh 2r, -sinh 2r], [-sinh 2r, cosh 2r]] up to the graph sign convention.
    ModeRegistry reg({ModeId{Nopa::kN1, Field::kSignal, 0, 0}, ModeId{Nopa::kN1, Field::kIdler, 0, 0}});
    const double r = 0.8;
    Eigen::MatrixXd s = oracle::tms(2, 0, 1, r);
    GaussianState st(reg, Eigen::VectorXd::Zero(4), RowMatrix(s * oracle::vacuum(2) * s.transpose()));
    ComplexGraph z = z_from_state(st);
    // cov_xx = V^-1 / 2 with Z = iV.
    Eigen::MatrixXd v = z.z.imag();
    Eigen::MatrixXd cov_xx = Eigen::MatrixXd(st.cov()).topLeftCorner(2, 2);
    EXPECT_LT((0.5 * v.inverse() - cov_xx).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(z.z.real().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Graph, ClusterWeightsConvergeToPropagatedGraph) {
    for (auto cfg : {PipelineConfig::one_d(1, 5, 0), PipelineConfig::three_d(1, 4, 0)}) {
        double prev = 1e9;
        for (double r : {1.0, 2.0, 3.0, 4.0}) {
            PipelineResult b = build(cfg.with_r(r));
            HGraph h = propagate_hgraph(b.trace, b.state.num_modes());
            std::vector<size_t> mask = default_rotation_mask(h);
            ClusterAdjacency adj = cluster_adjacency(z_from_state(b.state), mask, h);
            Eigen::MatrixXd limit = asymptotic_cluster_weights(h, mask);
            const double err = (adj.weights - limit).cwiseAbs().maxCoeff();
            EXPECT_LT(err, prev);
            EXPECT_LT(convergence_constant(adj.weights, limit, r), 5.0);
            prev = err;
        }
    }
}

TEST(Graph, ClusterAdjacencyMatchesRotatedStateOracle) {
    // Rotate the mask modes of the physical state by a quarter turn and read
    // Re(Z) of the result directly.
    PipelineResult b = build(PipelineConfig::one_d(1, 4, 0.9));
    HGraph h = propagate_hgraph(b.trace, b.state.num_modes());
    std::vector<size_t> mask = default_rotation_mask(h);
    ClusterAdjacency adj = cluster_adjacency(z_from_state(b.state), mask, h);
    GaussianState rotated = b.state;
    for (size_t q : mask) {
        rotated.apply(phase_rotate(q, -std::numbers::pi / 2));
    }
    Eigen::MatrixXd direct = z_from_state(rotated).z.real();
    EXPECT_LT((adj.weights - direct).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Graph, MaskMustBeIndependent) {
    PipelineResult b = build(PipelineConfig::one_d(0, 3, 0.5));
    HGraph h = propagate_hgraph(b.trace, b.state.num_modes());
    size_t a = 0, c = 0;
    for (Eigen::Index i = 0; i < h.adjacency.rows(); i++) {
        for (Eigen::Index j = 0; j < h.adjacency.cols(); j++) {
            if (h.adjacency(i, j) != 0) {
                a = i, c = j;
            }
        }
    }
    EXPECT_THROW(cluster_adjacency(z_from_state(b.state), {a, c}, h), std::invalid_argument);
}

TEST(Graph, ComponentsAndIsolatedVertices) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(5, 5);
    w(0, 1) = w(1, 0) = 0.5;
    w(3, 4) = w(4, 3) = -0.25;
    w(2, 3) = w(3, 2) = 1e-9;
    EXPECT_EQ(components(w, 1e-6).size(), 2u);
    EXPECT_EQ(components(w, 1e-6, true).size(), 3u);
    EXPECT_EQ(components(w, 1e-12).size(), 2u);
    EXPECT_EQ(components(w, 1e-12)[1], (std::vector<size_t>{2, 3, 4}));
}

TEST(Graph, OneDNullifierCounts) {
    for (int n_max : {0, 1, 2}) {
        for (int n_bins : {2, 3, 6}) {
            PipelineConfig cfg = PipelineConfig::one_d(n_max, n_bins, 0.5);
            PipelineResult b = build(cfg);
            NullifierSet set = nullifiers_1d(b.registry());
            // Two families per line and per interior bin transition.
            EXPECT_EQ(set.size(), static_cast<size_t>(2 * (2 * n_max + 1) * std::max(0, n_bins - 2)));
        }
    }
}

TEST(Graph, ThreeDNullifierArgumentsValidated) {
    PipelineResult b = build(PipelineConfig::three_d(1, 4, 0.5));
    EXPECT_EQ(nullifiers_3d_at(b.registry(), 0, 1, -1, 2).size(), 4u);
    EXPECT_THROW(nullifiers_3d_at(b.registry(), 0, 0, -1, 2), std::invalid_argument);
    EXPECT_THROW(nullifiers_3d_at(b.registry(), 0, 1, -1, 3), std::invalid_argument);
}

TEST(Graph, EdgeExportsAreDeterministic) {
    PipelineResult b = build(PipelineConfig::one_d(0, 3, 1.0));
    HGraph h = propagate_hgraph(b.trace, b.state.num_modes());
    ClusterAdjacency adj = cluster_adjacency(z_from_state(b.state), default_rotation_mask(h), h);
    std::string csv = edges_to_csv(adj.weights, b.registry(), 1e-6);
    EXPECT_EQ(csv.rfind("mode_a,mode_b,weight\n", 0), 0u);
    EXPECT_EQ(csv, edges_to_csv(adj.weights, b.registry(), 1e-6));
    nlohmann::json j = adjacency_to_json(adj.weights, b.registry(), 1e-6);
    EXPECT_EQ(j.dump(), adjacency_to_json(adj.weights, b.registry(), 1e-6).dump());
}

TEST(Graph, PropagateRejectsGenericPhases) {
    PipelineConfig cfg = PipelineConfig::one_d(0, 3, 0.5);
    cfg.nopas[0].delay_phase = 0.3;
    PipelineResult b = build(cfg);
    EXPECT_THROW(propagate_hgraph(b.trace, b.state.num_modes()), std::invalid_argument);
}

TEST(Graph, ThreeDStructure) {
    PipelineResult b = build(PipelineConfig::three_d(1, 4, 0.5));
    HGraph g = hgraph_from_trace(b.trace, b.state.num_modes(), kPreBeamsplitter);
    EXPECT_FALSE(check_self_inverse(g));  // rejected lines stay in vacuum
    EXPECT_TRUE(check_self_inverse_on_support(g));
    EXPECT_TRUE(check_bipartite(propagate_hgraph(b.trace, b.state.num_modes())).bipartite);
}

}  // namespace
}  // namespace cvforge
