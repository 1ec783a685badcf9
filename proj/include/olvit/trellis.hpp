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

#include <cstdint>
#include <span>
#include <vector>

#include "olvit/hmm.hpp"
#include "olvit/kernel.hpp"
#include "olvit/memory_trace.hpp"

namespace olvit {

/// One trellis column: best-path log-probabilities ending in each state at
/// `position` (1-based) and the back pointers that produced them.
/// `backptrs` is empty at position 1.
struct TrellisColumn {
    std::size_t position = 0;
    std::vector<LogProb> scores;
    std::vector<StateId> backptrs;
};

/// Settings shared by all decoders.
struct DecodeOptions {
    /// Kernel for the trellis step; nullptr selects kernel::active().
    const kernel::Kernel* kernel = nullptr;
    /// Trace stride; 0 selects default_stride(n).
    std::size_t trace_stride = 0;

    const kernel::Kernel& resolved_kernel() const { return kernel ? *kernel : kernel::active(); }
};

/// Output of a complete decode.
struct DecodeResult {
    StatePath path;
    LogProb log_prob = kLogZero;
    MemoryTrace trace;
    /// Trellis columns computed, counting the initial column.
    std::uint64_t forward_steps = 0;
};

/// Smallest index attaining the maximum score. Throws ImpossibleSequence
/// (at `position`) if every score is negative infinity.
StateId best_state(std::span<const LogProb> scores, std::size_t position);

/// Fills `scores` with log pi_j + log e_j(symbol). Throws ImpossibleSequence
/// at position 1 if no state can emit `symbol`.
void initial_scores(const Hmm& hmm, Symbol symbol, std::span<LogProb> scores);

/// One recurrence step into caller-owned storage. Throws ImpossibleSequence at
/// `position` if the resulting column is all negative infinity.
void step_scores(const Hmm& hmm, std::span<const LogProb> prev, Symbol symbol,
                 std::span<LogProb> scores, std::span<StateId> backptrs, std::size_t position,
                 const kernel::Kernel& kern);

TrellisColumn initial_column(const Hmm& hmm, Symbol symbol);

TrellisColumn forward_step(const Hmm& hmm, const TrellisColumn& prev, Symbol symbol,
                           const kernel::Kernel& kern = kernel::active());

/// Classical Viterbi keeping every back-pointer column. The trace records a
/// table length of i at position i.
DecodeResult viterbi_full(const Hmm& hmm, std::span<const Symbol> seq, const DecodeOptions& opts = {});

}  // namespace olvit
