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

#include "olvit/checkpoint.hpp"

#include <algorithm>
#include <cmath>

#include "olvit/error.hpp"

namespace olvit {

std::size_t ceil_sqrt(std::size_t n) {
    // Floor root first, compared by division so nothing overflows near 2^64.
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while (r + 1 <= n / (r + 1)) ++r;
    return r * r == n ? r : r + 1;
}

CheckpointPlan CheckpointPlan::make(std::size_t n, std::optional<std::size_t> block_len) {
    if (n == 0) throw InvalidArgument("cannot plan checkpoints for an empty sequence");
    if (block_len && *block_len == 0) throw InvalidArgument("block length must be >= 1");
    CheckpointPlan plan;
    plan.n = n;
    plan.block_len = std::min(block_len.value_or(ceil_sqrt(n)), n);
    for (std::size_t s = 1; s <= n; s += plan.block_len) {
        plan.starts.push_back(s);
        plan.ends.push_back(std::min(n, s + plan.block_len - 1));
    }
    return plan;
}

DecodeResult viterbi_checkpoint(const Hmm& hmm, std::span<const Symbol> seq,
                                std::optional<std::size_t> block_len, const DecodeOptions& opts) {
    if (seq.empty()) throw InvalidArgument("cannot decode an empty sequence");
    const std::size_t n = seq.size();
    const std::size_t m = hmm.states();
    const auto& kern = opts.resolved_kernel();
    const CheckpointPlan plan = CheckpointPlan::make(n, block_len);
    const std::size_t blocks = plan.blocks();
    const std::size_t last = blocks - 1;

    DecodeResult result{{}, kLogZero, MemoryTrace(opts.trace_stride ? opts.trace_stride : default_stride(2 * n)), 0};

    // seeds[b] is the score column block b is recomputed from. The last block
    // keeps its back pointers during the forward pass and needs no seed.
    std::vector<std::vector<LogProb>> seeds(blocks);
    std::size_t stored = 0;
    std::vector<StateId> block_bp(plan.block_len * m);
    std::size_t bp_cols = 0;
    std::vector<StateId> scratch_bp(m);
    auto record = [&] { result.trace.record(stored + bp_cols + 1); };

    std::vector<LogProb> cur(m), next(m);
    initial_scores(hmm, seq[0], cur);
    result.forward_steps = 1;
    if (blocks > 1) {
        seeds[0] = cur;
        ++stored;
    }
    record();

    const std::size_t last_first_bp = std::max<std::size_t>(plan.starts[last], 2);
    std::size_t next_block = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        if (next_block < last && i == plan.starts[next_block]) {
            seeds[next_block++] = cur;
            ++stored;
        }
        std::span<StateId> bp = scratch_bp;
        if (i >= last_first_bp) {
            bp = std::span<StateId>(block_bp.data() + (i - last_first_bp) * m, m);
            ++bp_cols;
        }
        step_scores(hmm, cur, seq[i - 1], next, bp, i, kern);
        cur.swap(next);
        ++result.forward_steps;
        record();
    }

    result.path.resize(n);
    StateId s = best_state(cur, n);
    result.log_prob = cur[s];
    result.path[n - 1] = s;

    for (std::size_t b = blocks; b-- > 0;) {
        const std::size_t first_bp = std::max<std::size_t>(plan.starts[b], 2);
        if (b != last) {
            cur = std::move(seeds[b]);
            seeds[b] = {};
            --stored;
            for (std::size_t i = first_bp; i <= plan.ends[b]; ++i) {
                std::span<StateId> bp(block_bp.data() + (i - first_bp) * m, m);
                step_scores(hmm, cur, seq[i - 1], next, bp, i, kern);
                cur.swap(next);
                ++bp_cols;
                ++result.forward_steps;
                record();
            }
        }
        s = result.path[plan.ends[b] - 1];
        for (std::size_t p = plan.ends[b]; p >= first_bp; --p) {
            s = block_bp[(p - first_bp) * m + s];
            result.path[p - 2] = s;
        }
        bp_cols = 0;
    }
    return result;
}

}  // namespace olvit
