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

#include "olvit/online.hpp"

#include <algorithm>
#include <cassert>

#include "olvit/error.hpp"

namespace olvit {

std::span<StateId> BackPointerWindow::push() {
    const std::size_t needed = (head_ + cols_ + 1) * m_;
    if (needed > buf_.size()) {
        if ((cols_ + 1) * m_ * 2 > buf_.size()) {
            // Keep capacity at least twice the live size so compaction amortizes.
            std::vector<StateId> grown(std::max({buf_.size() * 2, (cols_ + 1) * m_ * 2, 64 * m_}));
            std::copy_n(buf_.begin() + static_cast<std::ptrdiff_t>(head_ * m_), cols_ * m_, grown.begin());
            buf_.swap(grown);
        } else {
            std::copy_n(buf_.begin() + static_cast<std::ptrdiff_t>(head_ * m_), cols_ * m_, buf_.begin());
        }
        head_ = 0;
    }
    std::span<StateId> col(buf_.data() + (head_ + cols_) * m_, m_);
    ++cols_;
    return col;
}

void BackPointerWindow::pop_front(std::size_t count) {
    assert(count <= cols_);
    head_ += count;
    cols_ -= count;
    first_ += count;
    if (cols_ == 0) head_ = 0;
}

StreamDecoder::StreamDecoder(const Hmm& hmm, Symbol first_symbol, const DecodeOptions& opts)
    : hmm_(&hmm),
      kernel_(&opts.resolved_kernel()),
      scores_(hmm.states()),
      next_scores_(hmm.states()),
      window_(hmm.states()),
      leaves_(hmm.states(), kNone),
      former_leaves_(hmm.states(), kNone),
      trace_(opts.trace_stride) {
    initial_scores(hmm, first_symbol, scores_);
    position_ = 1;
    std::ranges::fill(window_.push(), StateId{0});  // position 1 has no back pointers

    // Virtual root at position 0; it carries no state and is never emitted.
    root_ = allocate(0, 0);
    append(root_);
    for (std::size_t j = 0; j < hmm.states(); ++j) {
        if (scores_[j] == kLogZero) continue;
        const std::int32_t id = allocate(1, static_cast<StateId>(j));
        nodes_[id].leaf = true;
        nodes_[id].parent = root_;
        ++nodes_[root_].children;
        append(id);
        leaves_[j] = id;
    }
    compress();
    emit_through_root();
    out_.clear();
    trace_.record(window_len());
}

std::int32_t StreamDecoder::allocate(std::size_t position, StateId state) {
    std::int32_t id;
    if (!free_.empty()) {
        id = free_.back();
        free_.pop_back();
    } else {
        id = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
    }
    nodes_[id] = Node{position, state, false, 0, kNone, kNone, kNone};
    if (position > 0) ++counters_.created;  // the virtual root is not counted
    return id;
}

void StreamDecoder::release(std::int32_t id) {
    if (nodes_[id].position > 0) ++counters_.deleted;
    unlink(id);
    free_.push_back(id);
}

void StreamDecoder::append(std::int32_t id) {
    nodes_[id].prev = tail_;
    nodes_[id].next = kNone;
    if (tail_ != kNone) {
        nodes_[tail_].next = id;
    } else {
        head_ = id;
    }
    tail_ = id;
}

void StreamDecoder::unlink(std::int32_t id) {
    Node& n = nodes_[id];
    if (n.prev != kNone) {
        nodes_[n.prev].next = n.next;
    } else {
        head_ = n.next;
    }
    if (n.next != kNone) {
        nodes_[n.next].prev = n.prev;
    } else {
        tail_ = n.prev;
    }
}

void StreamDecoder::check_usable() const {
    if (failed_) throw InvalidArgument("decoder stopped after an impossible symbol");
    if (finished_) throw InvalidArgument("decoder already finished");
}

std::span<const StateId> StreamDecoder::feed(Symbol symbol) {
    check_usable();
    if (symbol >= hmm_->alphabet_size()) {
        throw InvalidArgument("symbol " + std::to_string(symbol) + " outside alphabet");
    }
    out_.clear();
    std::span<StateId> bp = window_.push();
    try {
        step_scores(*hmm_, scores_, symbol, next_scores_, bp, position_ + 1, *kernel_);
    } catch (const ImpossibleSequence&) {
        failed_ = true;
        throw;
    }
    ++position_;
    scores_.swap(next_scores_);

    attach_leaves(bp);
    prune_childless_former_leaves();
    compress();
    emit_through_root();
    trace_.record(window_len());
    return out_;
}

void StreamDecoder::attach_leaves(std::span<const StateId> backptrs) {
    former_leaves_.swap(leaves_);
    std::ranges::fill(leaves_, kNone);
    for (std::size_t j = 0; j < scores_.size(); ++j) {
        if (scores_[j] == kLogZero) continue;
        const std::int32_t parent = former_leaves_[backptrs[j]];
        assert(parent != kNone);  // a finite score has a finite predecessor
        const std::int32_t id = allocate(position_, static_cast<StateId>(j));
        nodes_[id].leaf = true;
        nodes_[id].parent = parent;
        ++nodes_[parent].children;
        append(id);
        leaves_[j] = id;
    }
    for (std::int32_t f : former_leaves_) {
        if (f != kNone) nodes_[f].leaf = false;
    }
}

void StreamDecoder::prune_childless_former_leaves() {
    for (std::int32_t f : former_leaves_) {
        std::int32_t x = f;
        while (x != kNone && nodes_[x].children == 0 && !nodes_[x].leaf) {
            const std::int32_t parent = nodes_[x].parent;
            release(x);
            if (parent != kNone) --nodes_[parent].children;
            x = parent;
        }
    }
}

void StreamDecoder::compress() {
    std::int32_t new_root = kNone;
    for (std::int32_t id = tail_; id != kNone;) {
        const std::int32_t prev = nodes_[id].prev;
        Node& x = nodes_[id];
        if (!x.leaf && x.children <= 1) {
            // Every descendant has already been relinked past this node.
            release(id);
            id = prev;
            continue;
        }
        std::int32_t a = x.parent;
        while (a != kNone && nodes_[a].children < 2) {
            ++counters_.relink_steps;
            a = nodes_[a].parent;
        }
        nodes_[id].parent = a;
        if (a == kNone) new_root = id;
        id = prev;
    }
    assert(new_root != kNone);
    root_ = new_root;
}

void StreamDecoder::emit_through_root() {
    const Node& r = nodes_[root_];
    // The current column always stays in the window; its state is decided by
    // the next symbol or by finish().
    const std::size_t cap = std::min(r.position, position_ - 1);
    if (cap <= emitted_) return;
    StateId s = r.state;
    for (std::size_t p = r.position; p > cap; --p) s = window_.at(p, s);
    backtrack(cap, s, emitted_ + 1);
    window_.pop_front(cap - emitted_);
    emitted_ = cap;
}

void StreamDecoder::backtrack(std::size_t from_position, StateId from_state, std::size_t down_to) {
    out_.resize(from_position - down_to + 1);
    StateId s = from_state;
    out_.back() = s;
    for (std::size_t p = from_position; p > down_to; --p) {
        s = window_.at(p, s);
        out_[p - 1 - down_to] = s;
    }
}

std::span<const StateId> StreamDecoder::finish() {
    check_usable();
    const StateId best = best_state(scores_, position_);
    final_score_ = scores_[best];
    backtrack(position_, best, emitted_ + 1);
    window_.pop_front(window_.size());
    emitted_ = position_;
    finished_ = true;
    return out_;
}

TreeShape StreamDecoder::tree_shape() const {
    TreeShape shape;
    for (std::int32_t id = head_; id != kNone; id = nodes_[id].next) {
        if (nodes_[id].leaf) {
            ++shape.leaves;
        } else {
            ++shape.internal;
        }
    }
    return shape;
}

DecodeResult viterbi_online(const Hmm& hmm, std::span<const Symbol> seq, const DecodeOptions& opts,
                            TreeCounters* counters) {
    if (seq.empty()) throw InvalidArgument("cannot decode an empty sequence");
    DecodeOptions local = opts;
    if (local.trace_stride == 0) local.trace_stride = default_stride(seq.size());
    StreamDecoder dec(hmm, seq[0], local);
    StatePath path;
    path.reserve(seq.size());
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const auto out = dec.feed(seq[i]);
        path.insert(path.end(), out.begin(), out.end());
    }
    const auto tail = dec.finish();
    path.insert(path.end(), tail.begin(), tail.end());
    if (counters) *counters = dec.tree_op_count();
    return DecodeResult{std::move(path), dec.log_prob(), dec.trace(), dec.forward_steps()};
}

}  // namespace olvit
