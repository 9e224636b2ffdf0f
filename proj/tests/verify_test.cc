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


#include "cvforge/verify.h"

#include <gtest/gtest.h>

#include <cmath>

namespace cvforge {
namespace {

VlfReport report_at(const PipelineConfig &cfg) {
    PipelineResult b = build(cfg);
    return vlf_check(b.state, pipeline_nullifiers(cfg, b.registry()));
}

TEST(Verify, PassAndFailAroundThreshold) {
    const double r1 = std::log(2.0) / 2;
    EXPECT_TRUE(report_at(PipelineConfig::one_d(1, 4, r1 + 0.01)).all_pass);
    VlfReport fail = report_at(PipelineConfig::one_d(1, 4, r1 - 0.01));
    EXPECT_FALSE(fail.all_pass);
    EXPECT_EQ(fail.exit_code(), 2);
    const double r3 = std::log(4.0) / 2;
    EXPECT_TRUE(report_at(PipelineConfig::three_d(1, 6, r3 + 0.01)).all_pass);
    EXPECT_FALSE(report_at(PipelineConfig::three_d(1, 6, r3 - 0.01)).all_pass);
}

TEST(Verify, BoundIsStrict) {
    GaussianState vac = GaussianState::vacuum(
        ModeRegistry({ModeId{Nopa::kN1, Field::kSignal, 0, 0}, ModeId{Nopa::kN1, Field::kIdler, 0, 0}}));
    Nullifier n{"x", "x", 0, 0, {{vac.registry().mode(0), Quad::kX, 1}, {vac.registry().mode(1), Quad::kX, 1}}};
    VlfReport r = vlf_check(vac, NullifierSet{{n}});
    EXPECT_DOUBLE_EQ(r.rows[0].variance, 1.0);
    EXPECT_FALSE(r.all_pass);
}

TEST(Verify, EmptyReportCertifiesNothing) {
    VlfReport r = vlf_check(build(PipelineConfig::one_d(0, 2, 1.0)).state, NullifierSet{});
    EXPECT_FALSE(r.all_pass);
    EXPECT_EQ(r.exit_code(), 2);
}

TEST(Verify, ReportSerializations) {
    VlfReport r = report_at(PipelineConfig::one_d(0, 4, 1.0));
    r.threshold = Threshold{0.5, squeezing_db(0.5)};
    nlohmann::json j = r.to_json();
    EXPECT_EQ(j["rows"].size(), r.rows.size());
    EXPECT_TRUE(j["summary"]["all_pass"].get<bool>());
    EXPECT_DOUBLE_EQ(j["summary"]["threshold_r"].get<double>(), 0.5);
    std::string table = r.to_table();
    EXPECT_NE(table.find("all pass"), std::string::npos);
    EXPECT_NE(table.find("threshold r*"), std::string::npos);
}

TEST(Verify, ThresholdsMatchClosedForm) {
    Threshold one = find_threshold(PipelineConfig::one_d(1, 4, 0), 1e-10);
    EXPECT_NEAR(one.r, std::log(2.0) / 2, 1e-9);
    EXPECT_NEAR(one.db, 10 * std::log10(2.0), 1e-8);
    Threshold three = find_threshold(PipelineConfig::three_d(1, 6, 0), 1e-10);
    EXPECT_NEAR(three.r, std::log(4.0) / 2, 1e-9);
    EXPECT_NEAR(three.db, 10 * std::log10(4.0), 1e-8);
}

TEST(Verify, ThresholdErrors) {
    PipelineConfig cfg = PipelineConfig::one_d(1, 4, 0);
    EXPECT_THROW(find_threshold(cfg, 1e-6, 0.5, 1.0), NonBracketingRange);
    EXPECT_THROW(find_threshold(cfg, 1e-6, 0.0, 0.2), NonBracketingRange);
    EXPECT_THROW(find_threshold(cfg, 0, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(find_threshold(cfg, 1e-6, 1.0, 0.5), std::invalid_argument);
    PipelineConfig same = PipelineConfig::three_d(1, 4, 0);
    same.nopas[0].pump_offset = same.nopas[1].pump_offset = 0;
    EXPECT_THROW(find_threshold(same, 1e-6), std::invalid_argument);
}

}  // namespace
}  // namespace cvforge
