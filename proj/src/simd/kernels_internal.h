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


#ifndef _CVFORGE_SIMD_KERNELS_INTERNAL_H
#define _CVFORGE_SIMD_KERNELS_INTERNAL_H

#include "cvforge/simd/kernels.h"

namespace cvforge::simd::internal {

const Kernels &scalar_kernels();
/// nullptr when the variant is not compiled for this target.
const Kernels *avx2_kernels();
const Kernels *neon_kernels();

}  // namespace cvforge::simd::internal

#endif
