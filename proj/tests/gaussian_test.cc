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


#include "cvforge/gaussian.h"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "cvforge/tolerances.h"
#include "oracle.h"

namespace cvforge {
namespace {

ModeRegistry registry(size_t m) {
    std::vector<ModeId> ids;
    for (size_t i = 0; i < m; i++) {
        ids.push_back(ModeId{Nopa::kN1, Field::kSignal, static_cast<int>(i), 0});
    }
    return ModeRegistry(ids);
}

Eigen::MatrixXd dense(const GaussianState &s) {
    return Eigen::MatrixXd(s.cov());
}

TEST(Gaussian, VacuumAndValidation) {
    GaussianState v = GaussianState::vacuum(registry(3));
    EXPECT_TRUE(dense(v).isApprox(oracle::vacuum(3)));
    EXPECT_TRUE(v.mean().isZero());
    RowMatrix bad = RowMatrix::Identity(2, 2);
    bad(0, 1) = 0.1;
    EXPECT_THROW(GaussianState(registry(1), Eigen::VectorXd::Zero(2), bad), std::invalid_argument);
    EXPECT_THROW(GaussianState(registry(2), Eigen::VectorXd::Zero(2), RowMatrix::Identity(2, 2)),
                 std::invalid_argument);
}

TEST(Gaussian, TwoModeSqueezeMatchesOracle) {
    for (double r : {0.0, 0.3, 1.7}) {
        GaussianState s = apply(GaussianState::vacuum(registry(3)), two_mode_squeeze(0, 2, r));
        Eigen::MatrixXd o = oracle::tms(3, 0, 2, r);
        EXPECT_LT((dense(s) - o * oracle::vacuum(3) * o.transpose()).cwiseAbs().maxCoeff(), 1e-12);
        QuadCombination xd = {{s.registry().mode(0), Quad::kX, 1}, {s.registry().mode(2), Quad::kX, -1}};
        QuadCombination ps = {{s.registry().mode(0), Quad::kP, 1}, {s.registry().mode(2), Quad::kP, 1}};
        EXPECT_NEAR(quadrature_variance(s, xd), std::exp(-2 * r), 1e-12);
        EXPECT_NEAR(quadrature_variance(s, ps), std::exp(-2 * r), 1e-12);
    }
}

TEST(Gaussian, AsymmetricSqueezeSeparatesQuadratures) {
    GaussianState s = apply(GaussianState::vacuum(registry(2)), two_mode_squeeze(0, 1, 0.4, 1.1));
    QuadCombination xd = {{s.registry().mode(0), Quad::kX, 1}, {s.registry().mode(1), Quad::kX, -1}};
    QuadCombination ps = {{s.registry().mode(0), Quad::kP, 1}, {s.registry().mode(1), Quad::kP, 1}};
    EXPECT_NEAR(quadrature_variance(s, xd), std::exp(-0.8), 1e-12);
    EXPECT_NEAR(quadrature_variance(s, ps), std::exp(-2.2), 1e-12);
    GaussianState eq = apply(GaussianState::vacuum(registry(2)), two_mode_squeeze(0, 1, 0.6, 0.6));
    GaussianState ref = apply(GaussianState::vacuum(registry(2)), two_mode_squeeze(0, 1, 0.6));
    EXPECT_LT((dense(eq) - dense(ref)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Gaussian, BeamsplitterAndPhaseMatchOracle) {
    std::mt19937_64 rng(1);
    Eigen::MatrixXd pre = oracle::random_symplectic(4, rng, 6);
    Eigen::MatrixXd cov0 = pre * oracle::vacuum(4) * pre.transpose();
    GaussianState s(registry(4), Eigen::VectorXd::LinSpaced(8, -1, 1), RowMatrix(cov0));
    s.apply(beamsplitter(3, 1));
    s.apply(phase_rotate(2, 0.9));
    Eigen::MatrixXd o = oracle::phase(4, 2, 0.9) * oracle::bs(4, 3, 1);
    EXPECT_LT((dense(s) - o * cov0 * o.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((s.mean() - o * Eigen::VectorXd::LinSpaced(8, -1, 1)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Gaussian, DenseFormsAreSymplectic) {
    const size_t m = 5;
    Eigen::MatrixXd w = oracle::omega(m);
    for (const SymplecticOp &op : {two_mode_squeeze(0, 3, 0.8), two_mode_squeeze(1, 2, 0.2, 1.4),
                                   beamsplitter(4, 0), phase_rotate(2, 2.1),
                                   compose(beamsplitter(0, 1), two_mode_squeeze(1, 4, 0.5))}) {
        Eigen::MatrixXd s = op.dense(m);
        EXPECT_LT((s * w * s.transpose() - w).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT(op.symplectic_defect(), 1e-12);
    }
}

TEST(Gaussian, ComposeOrder) {
    GaussianState a = GaussianState::vacuum(registry(2));
    a.apply(two_mode_squeeze(0, 1, 0.7));
    a.apply(phase_rotate(0, 0.3));
    GaussianState b = apply(GaussianState::vacuum(registry(2)), compose(two_mode_squeeze(0, 1, 0.7), phase_rotate(0, 0.3)));
    EXPECT_LT((dense(a) - dense(b)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Gaussian, PermutationMovesModes) {
    GaussianState s = apply(GaussianState::vacuum(registry(3)), two_mode_squeeze(0, 1, 0.5));
    GaussianState p = apply(s, SymplecticOp::permutation({2, 0, 1}));
    // Mode 0 moved to slot 2 and mode 1 to slot 0.
    EXPECT_DOUBLE_EQ(p.cov()(2, 0), s.cov()(0, 1));
    EXPECT_DOUBLE_EQ(p.cov()(1, 1), 0.5);
}

TEST(Gaussian, DisplaceAndMean) {
    GaussianState s = GaussianState::vacuum(registry(2));
    s = displace(s, s.registry().mode(1), 0.5, -2.0);
    QuadCombination c = {{s.registry().mode(1), Quad::kX, 2}, {s.registry().mode(1), Quad::kP, 1}};
    EXPECT_DOUBLE_EQ(quadrature_mean(s, c), -1.0);
}

TEST(Gaussian, HomodyneMatchesSchurComplement) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; trial++) {
        Eigen::MatrixXd sym = oracle::random_symplectic(4, rng, 8);
        Eigen::MatrixXd cov = sym * oracle::vacuum(4) * sym.transpose();
        cov = 0.5 * (cov + cov.transpose()).eval();
        GaussianState st(registry(4), Eigen::VectorXd::Zero(8), RowMatrix(cov));
        const size_t q = trial % 4;
        const double theta = 0.1 * trial;
        HomodyneResult h = homodyne(st, st.registry().mode(q), theta, 0.0);
        EXPECT_LT((dense(h.state) - oracle::homodyne_cov(cov, q, theta)).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_EQ(h.state.num_modes(), 3u);
        EXPECT_FALSE(h.state.registry().contains(st.registry().mode(q)));
    }
}

TEST(Gaussian, HomodyneMarginalAndMeanUpdate) {
    GaussianState st = apply(GaussianState::vacuum(registry(2)), two_mode_squeeze(0, 1, 0.9));
    HomodyneResult h = homodyne(st, st.registry().mode(0), 0.0, 1.5);
    EXPECT_NEAR(h.marginal_variance, 0.5 * std::cosh(1.8), 1e-12);
    EXPECT_DOUBLE_EQ(h.marginal_mean, 0.0);
    // E[x_1 | x_0 = v] = cov(x1,x0)/var(x0) v.
    EXPECT_NEAR(h.state.mean()[0], std::tanh(1.8) * 1.5, 1e-12);
}

TEST(Gaussian, HomodyneSamplingIsSeeded) {
    GaussianState st = apply(GaussianState::vacuum(registry(2)), two_mode_squeeze(0, 1, 0.4));
    std::mt19937_64 a(42), b(42);
    EXPECT_EQ(homodyne(st, st.registry().mode(1), 0.2, std::nullopt, &a).value,
              homodyne(st, st.registry().mode(1), 0.2, std::nullopt, &b).value);
    EXPECT_THROW(homodyne(st, st.registry().mode(1), 0.2, std::nullopt, nullptr), std::invalid_argument);
}

TEST(Gaussian, HomodyneDegenerateThrows) {
    RowMatrix cov = RowMatrix::Zero(2, 2);
    cov(1, 1) = 1.0;
    GaussianState st(registry(1), Eigen::VectorXd::Zero(2), cov);
    EXPECT_THROW(homodyne(st, st.registry().mode(0), 0.0, 0.0), DegenerateMeasurement);
}

TEST(Gaussian, HomodyneAndDiscardCommuteOnDistinctModes) {
    std::mt19937_64 rng(8);
    Eigen::MatrixXd sym = oracle::random_symplectic(3, rng, 6);
    GaussianState st(registry(3), Eigen::VectorXd::Zero(6), RowMatrix(sym * oracle::vacuum(3) * sym.transpose()));
    const ModeId m0 = st.registry().mode(0);
    const ModeId m2 = st.registry().mode(2);
    GaussianState a = discard(homodyne(st, m0, 0.6, 0.3).state, m2);
    GaussianState b = homodyne(discard(st, m2), m0, 0.6, 0.3).state;
    EXPECT_LT((dense(a) - dense(b)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((a.mean() - b.mean()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Gaussian, SymplecticEigenvaluesAndPurity) {
    GaussianState st = apply(GaussianState::vacuum(registry(3)), two_mode_squeeze(0, 1, 1.2));
    EXPECT_LT(purity_defect(st), 1e-10);
    GaussianState reduced = discard(st, st.registry().mode(1));
    Eigen::VectorXd nu = symplectic_eigenvalues(reduced);
    ASSERT_EQ(nu.size(), 2);
    EXPECT_NEAR(nu[0], 0.5, 1e-12);
    EXPECT_NEAR(nu[1], 0.5 * std::cosh(2.4), 1e-10);
}

TEST(Gaussian, DelayRelabelShiftsBins) {
    LatticeConfig cfg;
    cfg.n_max = 0;
    cfg.n_bins = 3;
    ModeRegistry reg = enumerate_modes(cfg, {Nopa::kN1});
    DelayRelabel d = delay_relabel(reg, Field::kIdler, Nopa::kN1, 1);
    GaussianState st = GaussianState::vacuum(reg);
    const size_t s0 = reg.index(ModeId{Nopa::kN1, Field::kSignal, 0, 0});
    const size_t i0 = reg.index(ModeId{Nopa::kN1, Field::kIdler, 0, 0});
    const size_t i1 = reg.index(ModeId{Nopa::kN1, Field::kIdler, 0, 1});
    st.apply(two_mode_squeeze(s0, i0, 0.5));
    st.apply(d.op);
    EXPECT_NEAR(st.cov()(s0, i1), 0.5 * std::sinh(1.0), 1e-14);
    EXPECT_DOUBLE_EQ(st.cov()(s0, i0), 0.0);
    ASSERT_EQ(d.wrapped.size(), 1u);
    EXPECT_EQ(d.wrapped[0], i0);
}

TEST(Gaussian, NonFiniteParametersRejected) {
    EXPECT_THROW(two_mode_squeeze(0, 1, std::nan("")), std::invalid_argument);
    EXPECT_THROW(phase_rotate(0, INFINITY), std::invalid_argument);
    EXPECT_THROW(beamsplitter(1, 1), std::invalid_argument);
}

}  // namespace
}  // namespace cvforge
