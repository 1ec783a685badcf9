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

#include <optional>
#include <span>
#include <vector>

#include "olvit/trellis.hpp"

namespace olvit {

/// Partition of positions [1, n] into blocks of at most `block_len`.
///
/// Block b covers [starts[b], ends[b]]. Its back pointers are recomputed from
/// the score column at starts[b] - 1 (for b >= 1) or from the initial column
/// (b == 0), so only those seed columns are kept during the forward pass.
struct CheckpointPlan {
    std::size_t n = 0;
    std::size_t block_len = 0;
    std::vector<std::size_t> starts;
    std::vector<std::size_t> ends;

    std::size_t blocks() const noexcept { return starts.size(); }

    /// `block_len` defaults to ceil(sqrt(n)) and is clamped to n.
    static CheckpointPlan make(std::size_t n, std::optional<std::size_t> block_len = std::nullopt);
};

/// ceil(sqrt(n)) computed exactly in integers.
std::size_t ceil_sqrt(std::size_t n);

/// Two-level checkpointing Viterbi. Output is identical to viterbi_full.
///
/// The trace records, at every forward and backward step, the number of
/// retained columns: stored seed columns + back-pointer columns of the block
/// being traced + the working score column. Its peak is at most
/// blocks + block_len + 1. forward_steps counts every column computed,
/// recomputation included, and never exceeds 2n.
DecodeResult viterbi_checkpoint(const Hmm& hmm, std::span<const Symbol> seq,
                                std::optional<std::size_t> block_len = std::nullopt,
                                const DecodeOptions& opts = {});

}  // namespace olvit
