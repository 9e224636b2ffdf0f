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


#include "cvforge/lattice.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

namespace cvforge {
namespace {

TEST(Lattice, EnumerateCountsAndOrder) {
    LatticeConfig cfg;
    cfg.n_max = 2;
    cfg.n_bins = 3;
    ModeRegistry reg = enumerate_modes(cfg, {Nopa::kN1, Nopa::kN2});
    EXPECT_EQ(reg.size(), 2u * 2u * 5u * 3u);
    EXPECT_TRUE(std::is_sorted(reg.modes().begin(), reg.modes().end()));
    std::set<ModeId> unique(reg.modes().begin(), reg.modes().end());
    EXPECT_EQ(unique.size(), reg.size());
    for (size_t i = 0; i < reg.size(); i++) {
        EXPECT_EQ(reg.index(reg.mode(i)), i);
        EXPECT_EQ(reg.is_edge(i), reg.mode(i).bin == 0);
        EXPECT_LE(std::abs(reg.mode(i).freq), 2);
        EXPECT_LT(reg.mode(i).bin, 3);
    }
}

TEST(Lattice, EnumerateIsStable) {
    LatticeConfig cfg;
    cfg.n_max = 1;
    cfg.n_bins = 4;
    EXPECT_EQ(enumerate_modes(cfg, {Nopa::kN1}), enumerate_modes(cfg, {Nopa::kN1}));
}

TEST(Lattice, ZeroLinesIsAllowed) {
    LatticeConfig cfg;
    cfg.n_max = 0;
    cfg.n_bins = 1;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_EQ(enumerate_modes(cfg, {Nopa::kN1}).size(), 2u);
}

TEST(Lattice, ValidateRejects) {
    LatticeConfig cfg;
    cfg.n_max = -1;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.n_max = 1;
    cfg.n_bins = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Lattice, IndexOfMissingModeThrows) {
    LatticeConfig cfg;
    ModeRegistry reg = enumerate_modes(cfg, {Nopa::kN1});
    ModeId missing{Nopa::kN2, Field::kSignal, 0, 0};
    EXPECT_FALSE(reg.contains(missing));
    EXPECT_FALSE(reg.find(missing).has_value());
    EXPECT_THROW(reg.index(missing), std::out_of_range);
}

TEST(Lattice, DuplicateModesRejected) {
    ModeId a{Nopa::kN1, Field::kSignal, 0, 0};
    EXPECT_THROW(ModeRegistry({a, a}), std::invalid_argument);
}

TEST(Lattice, WithoutRelabeledExtended) {
    LatticeConfig cfg;
    cfg.n_max = 0;
    cfg.n_bins = 2;
    ModeRegistry reg = enumerate_modes(cfg, {Nopa::kN1});
    ModeRegistry smaller = reg.without(0);
    EXPECT_EQ(smaller.size(), reg.size() - 1);
    EXPECT_EQ(smaller.mode(0), reg.mode(1));
    EXPECT_EQ(smaller.is_edge(0), reg.is_edge(1));

    std::vector<ModeId> ids = reg.modes();
    ids[0].field = Field::kPlus;
    ModeRegistry re = reg.relabeled(ids);
    EXPECT_EQ(re.mode(0).field, Field::kPlus);
    EXPECT_EQ(re.is_edge(0), reg.is_edge(0));

    ModeId input{Nopa::kN1, Field::kInput, 0, 0};
    ModeRegistry ext = reg.extended({input});
    EXPECT_EQ(ext.index(input), reg.size());
    EXPECT_FALSE(ext.is_edge(reg.size()));
}

TEST(Lattice, ModeString) {
    EXPECT_EQ((ModeId{Nopa::kN1, Field::kSignal, 0, 1}).str(), "N1:signal:n=0:k=1");
    EXPECT_EQ((ModeId{Nopa::kN2, Field::kIdler, -1, 3}).str(), "N2:idler:n=-1:k=3");
}

TEST(Pairing, DegeneratePumpPairsEveryLine) {
    PairingTable t = pairing_table(2, 0);
    EXPECT_TRUE(t.rejected.empty());
    ASSERT_EQ(t.pairs.size(), 5u);
    for (auto [n, m] : t.pairs) {
        EXPECT_EQ(m, -n);
    }
}

TEST(Pairing, DetunedPumpRejectsOutOfRangePartners) {
    PairingTable up = pairing_table(1, 1);
    EXPECT_EQ(up.pairs, (std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}));
    EXPECT_EQ(up.rejected, std::vector<int>{-1});
    PairingTable down = pairing_table(1, -1);
    EXPECT_EQ(down.pairs, (std::vector<std::pair<int, int>>{{-1, 0}, {0, -1}}));
    EXPECT_EQ(down.rejected, std::vector<int>{1});
}

TEST(Pairing, PartnerMapIsAnInvolutionWithoutFixedPointsForOddOffset) {
    for (int n_max = 0; n_max <= 20; n_max++) {
        for (int d : {-1, 1}) {
            for (int n = -n_max; n <= n_max; n++) {
                EXPECT_NE(pair_partner(n, d), n);
                EXPECT_EQ(pair_partner(pair_partner(n, d), d), n);
            }
        }
        int fixed = 0;
        for (int n = -n_max; n <= n_max; n++) {
            fixed += pair_partner(n, 0) == n;
        }
        EXPECT_EQ(fixed, 1);
    }
}

}  // namespace
}  // namespace cvforge
