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


#ifndef _CVFORGE_VERIFY_H
#define _CVFORGE_VERIFY_H

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvforge/graph.h"
#include "cvforge/pipeline.h"

namespace cvforge {

/// Inseparability bound on each nullifier variance (hbar = 1).
inline constexpr double kVlfBound = 1.0;

struct VlfRow {
    std::string name;
    std::string family;
    int k = 0;
    int rail = 0;
    double variance = 0;
    double bound = kVlfBound;
    /// variance < bound, strictly.
    bool pass = false;
};

struct Threshold {
    double r = 0;
    double db = 0;
};

struct VlfReport {
    std::vector<VlfRow> rows;
    double min_variance = 0;
    double max_variance = 0;
    /// False for an empty report: nothing was certified.
    bool all_pass = false;
    std::optional<Threshold> threshold;

    nlohmann::json to_json() const;
    std::string to_table() const;
    /// 0 when every row passes, 2 otherwise.
    int exit_code() const;
};

VlfReport vlf_check(const GaussianState &state, const NullifierSet &nullifiers);

class NonBracketingRange : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Bisection on max nullifier variance(r) = 1 over [r_lo, r_hi]. The config's
/// squeezing values are overridden by r. Throws NonBracketingRange unless the
/// variance is >= 1 at r_lo and < 1 at r_hi.
Threshold find_threshold(const PipelineConfig &cfg, double tol, double r_lo = 0.0, double r_hi = 3.0);

}  // namespace cvforge

#endif
