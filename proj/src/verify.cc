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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cvforge/io.h"

namespace cvforge {

VlfReport vlf_check(const GaussianState &state, const NullifierSet &nullifiers) {
    VlfReport report;
    for (const Nullifier &n : nullifiers.items) {
        VlfRow row;
        row.name = n.name;
        row.family = n.family;
        row.k = n.k;
        row.rail = n.rail;
        row.variance = quadrature_variance(state, n.terms);
        row.pass = row.variance < row.bound;
        report.rows.push_back(std::move(row));
    }
    if (!report.rows.empty()) {
        auto [lo, hi] = std::minmax_element(report.rows.begin(), report.rows.end(),
                                            [](const VlfRow &a, const VlfRow &b) { return a.variance < b.variance; });
        report.min_variance = lo->variance;
        report.max_variance = hi->variance;
        report.all_pass = std::all_of(report.rows.begin(), report.rows.end(), [](const VlfRow &r) { return r.pass; });
    }
    return report;
}

nlohmann::json VlfReport::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const VlfRow &r : rows) {
        rows_json.push_back({{"name", r.name},
                             {"family", r.family},
                             {"k", r.k},
                             {"rail", r.rail},
                             {"variance", r.variance},
                             {"bound", r.bound},
                             {"pass", r.pass}});
    }
    nlohmann::json summary = {{"count", rows.size()},
                              {"min_variance", min_variance},
                              {"max_variance", max_variance},
                              {"all_pass", all_pass}};
    if (threshold) {
        summary["threshold_r"] = threshold->r;
        summary["threshold_db"] = threshold->db;
    }
    return {{"rows", std::move(rows_json)}, {"summary", std::move(summary)}};
}

std::string VlfReport::to_table() const {
    std::ostringstream out;
    out << "nullifier                      variance              bound  pass\n";
    for (const VlfRow &r : rows) {
        std::string name = r.name;
        name.resize(std::max<size_t>(name.size(), 30), ' ');
        std::string var = format_double(r.variance);
        var.resize(std::max<size_t>(var.size(), 22), ' ');
        out << name << ' ' << var << ' ' << r.bound << "      " << (r.pass ? "yes" : "NO") << '\n';
    }
    out << rows.size() << " nullifiers, variance in [" << format_double(min_variance) << ", "
        << format_double(max_variance) << "], " << (all_pass ? "all pass" : "NOT all pass") << '\n';
    if (threshold) {
        out << "threshold r* = " << format_double(threshold->r) << " (" << format_double(threshold->db) << " dB)\n";
    }
    return out.str();
}

int VlfReport::exit_code() const {
    return all_pass ? 0 : 2;
}

namespace {

double max_variance_at(const PipelineConfig &cfg, double r) {
    PipelineConfig at = cfg.with_r(r);
    PipelineResult built = build(at);
    NullifierSet set = pipeline_nullifiers(at, built.registry());
    if (set.items.empty()) {
        throw std::invalid_argument("find_threshold: pipeline has no interior nullifiers");
    }
    double worst = 0;
    for (const Nullifier &n : set.items) {
        worst = std::max(worst, quadrature_variance(built.state, n.terms));
    }
    return worst;
}

}  // namespace

Threshold find_threshold(const PipelineConfig &cfg, double tol, double r_lo, double r_hi) {
    if (!(tol > 0)) {
        throw std::invalid_argument("find_threshold: tolerance must be > 0");
    }
    if (!(r_lo < r_hi) || r_lo < 0) {
        throw std::invalid_argument("find_threshold: need 0 <= r_lo < r_hi");
    }
    const double f_lo = max_variance_at(cfg, r_lo) - kVlfBound;
    const double f_hi = max_variance_at(cfg, r_hi) - kVlfBound;
    if (!(f_lo >= 0 && f_hi < 0)) {
        std::ostringstream msg;
        msg << "find_threshold: range [" << r_lo << ", " << r_hi << "] does not bracket the bound (max variance "
            << f_lo + kVlfBound << " -> " << f_hi + kVlfBound << ")";
        throw NonBracketingRange(msg.str());
    }
    double lo = r_lo;
    double hi = r_hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (max_variance_at(cfg, mid) - kVlfBound >= 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double r = 0.5 * (lo + hi);
    return Threshold{r, squeezing_db(r)};
}

}  // namespace cvforge
