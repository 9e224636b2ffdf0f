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


#include "kernels_internal.h"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace cvforge::simd::internal {

#if defined(__aarch64__)

namespace {

void mix_rows_neon(const double *coef, size_t k, double *const *rows, size_t len) {
    float64x2_t in[kMaxMix];
    size_t c = 0;
    for (; c + 2 <= len; c += 2) {
        for (size_t b = 0; b < k; b++) {
            in[b] = vld1q_f64(rows[b] + c);
        }
        for (size_t t = 0; t < k; t++) {
            float64x2_t acc = vdupq_n_f64(0.0);
            for (size_t b = 0; b < k; b++) {
                // vmulq + vaddq rather than vfmaq keeps rounding identical to the scalar path.
                acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(coef[t * k + b]), in[b]));
            }
            vst1q_f64(rows[t] + c, acc);
        }
    }
    double tail[kMaxMix];
    for (; c < len; c++) {
        for (size_t b = 0; b < k; b++) {
            tail[b] = rows[b][c];
        }
        for (size_t t = 0; t < k; t++) {
            double acc = 0.0;
            for (size_t b = 0; b < k; b++) {
                acc = acc + coef[t * k + b] * tail[b];
            }
            rows[t][c] = acc;
        }
    }
}

void rank1_update_neon(
    double *mat, size_t n_rows, size_t n_cols, size_t stride, const double *u, const double *v, double alpha) {
    for (size_t i = 0; i < n_rows; i++) {
        double f = alpha * u[i];
        float64x2_t fv = vdupq_n_f64(f);
        double *row = mat + i * stride;
        size_t j = 0;
        for (; j + 2 <= n_cols; j += 2) {
            vst1q_f64(row + j, vsubq_f64(vld1q_f64(row + j), vmulq_f64(fv, vld1q_f64(v + j))));
        }
        for (; j < n_cols; j++) {
            row[j] = row[j] - f * v[j];
        }
    }
}

double dot_neon(const double *a, const double *b, size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    double total = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; i++) {
        total += a[i] * b[i];
    }
    return total;
}

}  // namespace

const Kernels *neon_kernels() {
    static const Kernels table{Isa::kNeon, mix_rows_neon, rank1_update_neon, dot_neon};
    return &table;
}

#else

const Kernels *neon_kernels() {
    return nullptr;
}

#endif

}  // namespace cvforge::simd::internal
