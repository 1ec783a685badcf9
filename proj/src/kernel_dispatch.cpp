// Copyright 2026 The olvit Authors
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

#include "olvit/kernel.hpp"

namespace olvit::kernel {

namespace {

constexpr Kernel kScalar{"scalar", &detail::max_plus_step_scalar};

#if defined(OLVIT_HAVE_AVX2)
constexpr Kernel kAvx2{"avx2", &detail::max_plus_step_avx2};

bool cpu_supports_avx2() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}
#endif

}  // namespace

const Kernel& scalar() { return kScalar; }

const Kernel* avx2() {
#if defined(OLVIT_HAVE_AVX2)
    static const bool supported = cpu_supports_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const Kernel& active() {
    static const Kernel& chosen = avx2() != nullptr ? *avx2() : scalar();
    return chosen;
}

std::vector<const Kernel*> available() {
    std::vector<const Kernel*> out{&scalar()};
    if (const Kernel* k = avx2()) out.push_back(k);
    return out;
}

}  // namespace olvit::kernel
