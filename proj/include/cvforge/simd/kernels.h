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


#ifndef _CVFORGE_SIMD_KERNELS_H
#define _CVFORGE_SIMD_KERNELS_H

#include <cstddef>
#include <string>

namespace cvforge::simd {

/// Instruction set a kernel table was written for.
enum class Isa { kScalar, kAvx2, kNeon };

std::string to_string(Isa isa);

/// Largest number of rows mix_rows mixes at once (4 modes, x and p).
inline constexpr size_t kMaxMix = 8;

/// Hot loops of the covariance engine.
///
/// mix_rows and rank1_update perform the same multiplies and adds in the same
/// order in every variant, so their results are bit-identical across ISAs.
/// dot is a reduction; vector variants reassociate the sum and agree with the
/// scalar reference only to rounding.
struct Kernels {
    Isa isa;
    /// rows[t][c] <- sum_b coef[t * k + b] * rows[b][c] for c in [0, len), in place. k <= kMaxMix.
    void (*mix_rows)(const double *coef, size_t k, double *const *rows, size_t len);
    /// mat[i * stride + j] -= (alpha * u[i]) * v[j] for i < n_rows, j < n_cols.
    void (*rank1_update)(double *mat, size_t n_rows, size_t n_cols, size_t stride, const double *u, const double *v, double alpha);
    /// sum_i a[i] * b[i].
    double (*dot)(const double *a, const double *b, size_t n);
};

bool isa_available(Isa isa);

/// Throws std::invalid_argument when the ISA is not compiled in or not supported by the CPU.
const Kernels &kernels_for(Isa isa);

/// Best available table, chosen once. CVFORGE_SIMD=scalar|avx2|neon overrides.
const Kernels &active_kernels();

/// Forces the active table (tests and benchmarks).
void set_active_isa(Isa isa);

}  // namespace cvforge::simd

#endif
