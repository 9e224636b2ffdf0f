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

#ifndef _CVFORGE_TOLERANCES_H
#define _CVFORGE_TOLERANCES_H

namespace cvforge::tol {

/// Structural identities: symplectic form, G^2 = I, permutation bookkeeping.
inline constexpr double kStructural = 1e-10;

/// Physics comparisons against closed forms: variances, purity, Z recovery.
inline constexpr double kPhysics = 1e-9;

/// Covariance symmetry after each update.
inline constexpr double kSymmetry = 1e-12;

/// Below this marginal variance a homodyne measurement is refused.
inline constexpr double kDegenerateVariance = 1e-14;

/// Determinant of an extracted single-mode gate.
inline constexpr double kGateDeterminant = 1e-8;

/// Entries below this magnitude are treated as absent graph edges.
inline constexpr double kEdgeWeight = 1e-9;

}  // namespace cvforge::tol

#endif
