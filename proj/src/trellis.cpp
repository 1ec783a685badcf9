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

#include "olvit/trellis.hpp"

#include "olvit/error.hpp"

namespace olvit {

StateId best_state(std::span<const LogProb> scores, std::size_t position) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < scores.size(); ++j) {
        if (scores[j] > scores[best]) best = j;
    }
    if (scores[best] == kLogZero) throw ImpossibleSequence(position);
    return static_cast<StateId>(best);
}

void initial_scores(const Hmm& hmm, Symbol symbol, std::span<LogProb> scores) {
    if (symbol >= hmm.alphabet_size()) {
        throw InvalidArgument("symbol " + std::to_string(symbol) + " outside alphabet");
    }
    const auto emit = hmm.emission_column(symbol);
    bool any = false;
    for (std::size_t j = 0; j < hmm.states(); ++j) {
        scores[j] = hmm.initial(j) + emit[j];
        any = any || scores[j] != kLogZero;
    }
    if (!any) throw ImpossibleSequence(1);
}

void step_scores(const Hmm& hmm, std::span<const LogProb> prev, Symbol symbol,
                 std::span<LogProb> scores, std::span<StateId> backptrs, std::size_t position,
                 const kernel::Kernel& kern) {
    if (symbol >= hmm.alphabet_size()) {
        throw InvalidArgument("symbol " + std::to_string(symbol) + " outside alphabet");
    }
    kern.max_plus_step(prev, hmm.transition_table(), hmm.emission_column(symbol), scores, backptrs);
    for (LogProb s : scores) {
        if (s != kLogZero) return;
    }
    throw ImpossibleSequence(position);
}

TrellisColumn initial_column(const Hmm& hmm, Symbol symbol) {
    TrellisColumn col;
    col.position = 1;
    col.scores.resize(hmm.states());
    initial_scores(hmm, symbol, col.scores);
    return col;
}

TrellisColumn forward_step(const Hmm& hmm, const TrellisColumn& prev, Symbol symbol,
                           const kernel::Kernel& kern) {
    if (prev.scores.size() != hmm.states()) throw InvalidArgument("column size differs from state count");
    TrellisColumn col;
    col.position = prev.position + 1;
    col.scores.resize(hmm.states());
    col.backptrs.resize(hmm.states());
    step_scores(hmm, prev.scores, symbol, col.scores, col.backptrs, col.position, kern);
    return col;
}

DecodeResult viterbi_full(const Hmm& hmm, std::span<const Symbol> seq, const DecodeOptions& opts) {
    if (seq.empty()) throw InvalidArgument("cannot decode an empty sequence");
    const std::size_t n = seq.size();
    const std::size_t m = hmm.states();
    const auto& kern = opts.resolved_kernel();

    DecodeResult result{{}, kLogZero, MemoryTrace(opts.trace_stride ? opts.trace_stride : default_stride(n)), 0};

    // Row i-2 holds the back pointers of position i (positions 2..n).
    std::vector<StateId> table((n - 1) * m);
    std::vector<LogProb> prev(m), cur(m);
    initial_scores(hmm, seq[0], prev);
    result.forward_steps = 1;
    result.trace.record(1);
    for (std::size_t i = 2; i <= n; ++i) {
        std::span<StateId> bp(table.data() + (i - 2) * m, m);
        step_scores(hmm, prev, seq[i - 1], cur, bp, i, kern);
        prev.swap(cur);
        ++result.forward_steps;
        result.trace.record(i);
    }

    result.path.resize(n);
    StateId s = best_state(prev, n);
    result.log_prob = prev[s];
    result.path[n - 1] = s;
    for (std::size_t i = n; i >= 2; --i) {
        s = table[(i - 2) * m + s];
        result.path[i - 2] = s;
    }
    return result;
}

}  // namespace olvit
