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

namespace cvforge::simd::internal {

namespace {

void mix_rows_scalar(const double *coef, size_t k, double *const *rows, size_t len) {
    double in[kMaxMix];
    for (size_t c = 0; c < len; c++) {
        for (size_t b = 0; b < k; b++) {
            in[b] = rows[b][c];
        }
        for (size_t t = 0; t < k; t++) {
            double acc = 0.0;
            for (size_t b = 0; b < k; b++) {
                acc = acc + coef[t * k + b] * in[b];
            }
            rows[t][c] = acc;
        }
    }
}

void rank1_update_scalar(
    double *mat, size_t n_rows, size_t n_cols, size_t stride, const double *u, const double *v, double alpha) {
    for (size_t i = 0; i < n_rows; i++) {
        double f = alpha * u[i];
        double *row = mat + i * stride;
        for (size_t j = 0; j < n_cols; j++) {
            row[j] = row[j] - f * v[j];
        }
    }
}

double dot_scalar(const double *a, const double *b, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; i++) {
        acc += a[i] * b[i];
    }
    return acc;
}

}  // namespace

const Kernels &scalar_kernels() {
    static const Kernels table{Isa::kScalar, mix_rows_scalar, rank1_update_scalar, dot_scalar};
    return table;
}

}  // namespace cvforge::simd::internal
