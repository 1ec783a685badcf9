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

namespace olvit::kernel::detail {

void max_plus_step_scalar(std::span<const LogProb> prev, std::span<const LogProb> trans,
                          std::span<const LogProb> emit, std::span<LogProb> out,
                          std::span<StateId> arg) {
    const std::size_t m = prev.size();
    for (std::size_t j = 0; j < m; ++j) {
        LogProb best = prev[0] + trans[j];
        std::size_t best_k = 0;
        for (std::size_t k = 1; k < m; ++k) {
            const LogProb v = prev[k] + trans[k * m + j];
            if (v > best) {
                best = v;
                best_k = k;
            }
        }
        out[j] = best + emit[j];
        arg[j] = static_cast<StateId>(best_k);
    }
}

}  // namespace olvit::kernel::detail
