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


#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "kernels_internal.h"

namespace cvforge::simd {

std::string to_string(Isa isa) {
    switch (isa) {
        case Isa::kScalar:
            return "scalar";
        case Isa::kAvx2:
            return "avx2";
        case Isa::kNeon:
            return "neon";
    }
    return "?";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::kScalar:
            return true;
        case Isa::kAvx2:
#if defined(__x86_64__) || defined(_M_X64)
            return internal::avx2_kernels() != nullptr && __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::kNeon:
            // Advanced SIMD is mandatory on AArch64.
            return internal::neon_kernels() != nullptr;
    }
    return false;
}

const Kernels &kernels_for(Isa isa) {
    if (!isa_available(isa)) {
        throw std::invalid_argument("SIMD variant '" + to_string(isa) + "' is not available on this machine");
    }
    switch (isa) {
        case Isa::kAvx2:
            return *internal::avx2_kernels();
        case Isa::kNeon:
            return *internal::neon_kernels();
        default:
            return internal::scalar_kernels();
    }
}

namespace {

const Kernels *pick_default() {
    if (const char *env = std::getenv("CVFORGE_SIMD")) {
        std::string_view want(env);
        for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
            if (want == to_string(isa)) {
                return &kernels_for(isa);
            }
        }
        throw std::invalid_argument("CVFORGE_SIMD: unknown variant '" + std::string(want) + "'");
    }
    for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
        if (isa_available(isa)) {
            return &kernels_for(isa);
        }
    }
    return &internal::scalar_kernels();
}

std::atomic<const Kernels *> &active_slot() {
    static std::atomic<const Kernels *> slot{pick_default()};
    return slot;
}

}  // namespace

const Kernels &active_kernels() {
    return *active_slot().load(std::memory_order_acquire);
}

void set_active_isa(Isa isa) {
    active_slot().store(&kernels_for(isa), std::memory_order_release);
}

}  // namespace cvforge::simd
