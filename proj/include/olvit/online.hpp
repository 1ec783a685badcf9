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

// On-line Viterbi decoding.
//
// The survivor paths of the back-pointer tree are tracked in compressed form:
// only current leaves and nodes with two or more children are kept, each
// pointing at its nearest kept ancestor. When the sweep over the nodes finds
// a kept node without such an ancestor, every surviving path passes through
// it, so the optimal path up to that node is fixed and is emitted at once.
// The back-pointer columns left of it are then released.

#include <cstdint>
#include <span>
#include <vector>

#include "olvit/hmm.hpp"
#include "olvit/kernel.hpp"
#include "olvit/memory_trace.hpp"
#include "olvit/trellis.hpp"

namespace olvit {

/// Cumulative tree maintenance work. The virtual root is not counted.
struct TreeCounters {
    std::uint64_t created = 0;
    std::uint64_t deleted = 0;
    /// Hops past contracted (fewer than two children) ancestors while
    /// relinking kept nodes.
    std::uint64_t relink_steps = 0;

    std::uint64_t total() const noexcept { return created + deleted + relink_steps; }
};

/// Node counts of the compressed tree.
struct TreeShape {
    std::size_t leaves = 0;
    std::size_t internal = 0;
};

/// Back-pointer columns for positions (first - 1, first - 1 + size()].
/// Columns are appended at the back and released from the front; storage
/// is compacted in place so steady-state use does not allocate.
class BackPointerWindow {
public:
    explicit BackPointerWindow(std::size_t states) : m_(states) {}

    std::size_t size() const noexcept { return cols_; }
    std::size_t first_position() const noexcept { return first_; }

    /// Storage for the column of position first_position() + size().
    std::span<StateId> push();
    /// Releases `count` columns from the front.
    void pop_front(std::size_t count);

    StateId at(std::size_t position, StateId state) const {
        return buf_[(head_ + position - first_) * m_ + state];
    }

private:
    std::size_t m_;
    std::vector<StateId> buf_;
    std::size_t head_ = 0;
    std::size_t cols_ = 0;
    std::size_t first_ = 1;
};

/// Incremental Viterbi decoder for one symbol stream.
///
/// The emitted states, concatenated with finish(), equal the viterbi_full path
/// for the same input. The model must outlive the decoder.
class StreamDecoder {
public:
    /// Starts a stream with its first symbol. Throws ImpossibleSequence if no
    /// state can emit it.
    StreamDecoder(const Hmm& hmm, Symbol first_symbol, const DecodeOptions& opts = {});

    StreamDecoder(StreamDecoder&&) noexcept = default;
    StreamDecoder& operator=(StreamDecoder&&) noexcept = default;
    StreamDecoder(const StreamDecoder&) = delete;
    StreamDecoder& operator=(const StreamDecoder&) = delete;

    /// Consumes one symbol and returns the states newly fixed by a coalescence,
    /// in position order. The span is valid until the next call. On
    /// ImpossibleSequence the decoder is left failed and emits nothing more.
    std::span<const StateId> feed(Symbol symbol);

    /// Backtracks from the best final state and returns the rest of the path.
    std::span<const StateId> finish();

    /// Retained back-pointer columns: position() - emitted().
    std::size_t window_len() const noexcept { return window_.size(); }
    /// Symbols consumed.
    std::size_t position() const noexcept { return position_; }
    /// Path positions already returned.
    std::size_t emitted() const noexcept { return emitted_; }
    bool finished() const noexcept { return finished_; }

    /// Score of the returned path; valid after finish().
    LogProb log_prob() const noexcept { return final_score_; }

    const TreeCounters& tree_op_count() const noexcept { return counters_; }
    TreeShape tree_shape() const;
    const MemoryTrace& trace() const noexcept { return trace_; }
    std::uint64_t forward_steps() const noexcept { return position_; }

private:
    static constexpr std::int32_t kNone = -1;

    struct Node {
        std::size_t position = 0;
        StateId state = 0;
        bool leaf = false;
        std::int32_t children = 0;
        std::int32_t parent = kNone;
        std::int32_t prev = kNone;  // position-ordered list
        std::int32_t next = kNone;
    };

    std::int32_t allocate(std::size_t position, StateId state);
    void release(std::int32_t id);
    void append(std::int32_t id);
    void unlink(std::int32_t id);
    void attach_leaves(std::span<const StateId> backptrs);
    void prune_childless_former_leaves();
    void compress();
    void emit_through_root();
    void backtrack(std::size_t from_position, StateId from_state, std::size_t down_to);
    void check_usable() const;

    const Hmm* hmm_;
    const kernel::Kernel* kernel_;
    std::vector<LogProb> scores_;
    std::vector<LogProb> next_scores_;
    BackPointerWindow window_;
    std::size_t position_ = 0;
    std::size_t emitted_ = 0;
    bool finished_ = false;
    bool failed_ = false;
    LogProb final_score_ = kLogZero;

    std::vector<Node> nodes_;
    std::vector<std::int32_t> free_;
    std::int32_t head_ = kNone;
    std::int32_t tail_ = kNone;
    std::int32_t root_ = kNone;
    std::vector<std::int32_t> leaves_;
    std::vector<std::int32_t> former_leaves_;

    StatePath out_;
    TreeCounters counters_;
    MemoryTrace trace_;
};

/// Streams `seq` through a StreamDecoder. The trace is the decoder's window
/// trace; forward_steps equals n.
DecodeResult viterbi_online(const Hmm& hmm, std::span<const Symbol> seq, const DecodeOptions& opts = {},
                            TreeCounters* counters = nullptr);

}  // namespace olvit
