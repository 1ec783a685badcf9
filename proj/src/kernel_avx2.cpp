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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "olvit/kernel.hpp"

namespace olvit::kernel::detail {

namespace {

inline void store_args(__m256d idx, StateId* dst) {
    alignas(16) std::int32_t lanes[4];
    _mm_store_si128(reinterpret_cast<__m128i*>(lanes), _mm256_cvttpd_epi32(idx));
    for (int l = 0; l < 4; ++l) dst[l] = static_cast<StateId>(lanes[l]);
}

}  // namespace

void max_plus_step_avx2(std::span<const LogProb> prev, std::span<const LogProb> trans,
                        std::span<const LogProb> emit, std::span<LogProb> out,
                        std::span<StateId> arg) {
    const std::size_t m = prev.size();
    const double* t = trans.data();
    std::size_t j = 0;

    // Eight targets per iteration: two independent compare/blend chains.
    for (; j + 8 <= m; j += 8) {
        const __m256d p0 = _mm256_set1_pd(prev[0]);
        __m256d best_lo = _mm256_add_pd(p0, _mm256_loadu_pd(t + j));
        __m256d best_hi = _mm256_add_pd(p0, _mm256_loadu_pd(t + j + 4));
        __m256d arg_lo = _mm256_setzero_pd();
        __m256d arg_hi = _mm256_setzero_pd();
        for (std::size_t k = 1; k < m; ++k) {
            const __m256d pk = _mm256_set1_pd(prev[k]);
            const __m256d kk = _mm256_set1_pd(static_cast<double>(k));
            const double* row = t + k * m + j;
            const __m256d v_lo = _mm256_add_pd(pk, _mm256_loadu_pd(row));
            const __m256d v_hi = _mm256_add_pd(pk, _mm256_loadu_pd(row + 4));
            const __m256d gt_lo = _mm256_cmp_pd(v_lo, best_lo, _CMP_GT_OQ);
            const __m256d gt_hi = _mm256_cmp_pd(v_hi, best_hi, _CMP_GT_OQ);
            best_lo = _mm256_blendv_pd(best_lo, v_lo, gt_lo);
            best_hi = _mm256_blendv_pd(best_hi, v_hi, gt_hi);
            arg_lo = _mm256_blendv_pd(arg_lo, kk, gt_lo);
            arg_hi = _mm256_blendv_pd(arg_hi, kk, gt_hi);
        }
        _mm256_storeu_pd(out.data() + j, _mm256_add_pd(best_lo, _mm256_loadu_pd(emit.data() + j)));
        _mm256_storeu_pd(out.data() + j + 4,
                         _mm256_add_pd(best_hi, _mm256_loadu_pd(emit.data() + j + 4)));
        store_args(arg_lo, arg.data() + j);
        store_args(arg_hi, arg.data() + j + 4);
    }

    for (; j + 4 <= m; j += 4) {
        __m256d best = _mm256_add_pd(_mm256_set1_pd(prev[0]), _mm256_loadu_pd(t + j));
        __m256d idx = _mm256_setzero_pd();
        for (std::size_t k = 1; k < m; ++k) {
            const __m256d v = _mm256_add_pd(_mm256_set1_pd(prev[k]), _mm256_loadu_pd(t + k * m + j));
            const __m256d gt = _mm256_cmp_pd(v, best, _CMP_GT_OQ);
            best = _mm256_blendv_pd(best, v, gt);
            idx = _mm256_blendv_pd(idx, _mm256_set1_pd(static_cast<double>(k)), gt);
        }
        _mm256_storeu_pd(out.data() + j, _mm256_add_pd(best, _mm256_loadu_pd(emit.data() + j)));
        store_args(idx, arg.data() + j);
    }

    for (; j < m; ++j) {
        LogProb best = prev[0] + t[j];
        std::size_t best_k = 0;
        for (std::size_t k = 1; k < m; ++k) {
            const LogProb v = prev[k] + t[k * m + j];
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
