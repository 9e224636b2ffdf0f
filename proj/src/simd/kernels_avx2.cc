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

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define CVFORGE_HAVE_AVX2_VARIANT 1
#endif

namespace cvforge::simd::internal {

#ifdef CVFORGE_HAVE_AVX2_VARIANT

namespace {

// Each output is built as ((0 + c0*r0) + c1*r1) + ..., the same sequence the
// scalar reference uses. mul and add stay separate instructions.
__attribute__((target("avx2"))) void mix_rows_avx2(const double *coef, size_t k, double *const *rows, size_t len) {
    __m256d in[kMaxMix];
    size_t c = 0;
    for (; c + 4 <= len; c += 4) {
        for (size_t b = 0; b < k; b++) {
            in[b] = _mm256_loadu_pd(rows[b] + c);
        }
        for (size_t t = 0; t < k; t++) {
            __m256d acc = _mm256_setzero_pd();
            for (size_t b = 0; b < k; b++) {
                acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(coef[t * k + b]), in[b]));
            }
            _mm256_storeu_pd(rows[t] + c, acc);
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

__attribute__((target("avx2"))) void rank1_update_avx2(
    double *mat, size_t n_rows, size_t n_cols, size_t stride, const double *u, const double *v, double alpha) {
    for (size_t i = 0; i < n_rows; i++) {
        double f = alpha * u[i];
        __m256d fv = _mm256_set1_pd(f);
        double *row = mat + i * stride;
        size_t j = 0;
        for (; j + 4 <= n_cols; j += 4) {
            __m256d r = _mm256_loadu_pd(row + j);
            __m256d w = _mm256_loadu_pd(v + j);
            _mm256_storeu_pd(row + j, _mm256_sub_pd(r, _mm256_mul_pd(fv, w)));
        }
        for (; j < n_cols; j++) {
            row[j] = row[j] - f * v[j];
        }
    }
}

__attribute__((target("avx2"))) double dot_avx2(const double *a, const double *b, size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
    double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; i++) {
        acc += a[i] * b[i];
    }
    return acc;
}

}  // namespace

const Kernels *avx2_kernels() {
    static const Kernels table{Isa::kAvx2, mix_rows_avx2, rank1_update_avx2, dot_avx2};
    return &table;
}

#else

const Kernels *avx2_kernels() {
    return nullptr;
}

#endif

}  // namespace cvforge::simd::internal
