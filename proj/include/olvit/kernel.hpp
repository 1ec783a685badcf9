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

#pragma once

// Max-plus trellis step kernels.
//
// Every variant computes, for each target state j,
//
//     out[j] = max_k (prev[k] + trans[k*m + j]) + emit[j]
//     arg[j] = smallest k attaining that max
//
// with the additions performed in exactly that order, so all variants are
// bit-identical. Variants differ only in how many j are processed at once.

#include <span>
#include <string_view>
#include <vector>

#include "olvit/hmm.hpp"

namespace olvit::kernel {

using MaxPlusStepFn = void (*)(std::span<const LogProb> prev, std::span<const LogProb> trans,
                               std::span<const LogProb> emit, std::span<LogProb> out,
                               std::span<StateId> arg);

struct Kernel {
    std::string_view name;
    MaxPlusStepFn max_plus_step;
};

/// Portable reference implementation.
const Kernel& scalar();

/// AVX2 implementation, or nullptr when not compiled in or unsupported by the CPU.
const Kernel* avx2();

/// Fastest kernel the running CPU supports. Chosen once.
const Kernel& active();

/// Every kernel usable on this machine, scalar first.
std::vector<const Kernel*> available();

namespace detail {
void max_plus_step_scalar(std::span<const LogProb> prev, std::span<const LogProb> trans,
                          std::span<const LogProb> emit, std::span<LogProb> out,
                          std::span<StateId> arg);
#if defined(OLVIT_HAVE_AVX2)
void max_plus_step_avx2(std::span<const LogProb> prev, std::span<const LogProb> trans,
                        std::span<const LogProb> emit, std::span<LogProb> out,
                        std::span<StateId> arg);
#endif
}  // namespace detail

}  // namespace olvit::kernel
