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

#include <numeric>

#include "doctest.h"
#include "olvit/error.hpp"
#include "olvit/online.hpp"
#include "olvit/randwalk.hpp"
#include "olvit/trellis.hpp"
#include "test_util.hpp"

using namespace olvit;

namespace {

struct Streamed {
    StatePath path;
    std::vector<std::size_t> emitted_per_feed;
    TreeCounters counters;
    LogProb log_prob;
};

// Feeds symbols one at a time, checking the per-step invariants as it goes.
Streamed stream_all(const Hmm& hmm, const SymbolSeq& seq) {
    Streamed s;
    StreamDecoder dec(hmm, seq[0]);
    CHECK(dec.window_len() == dec.position() - dec.emitted());
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const auto out = dec.feed(seq[i]);
        s.path.insert(s.path.end(), out.begin(), out.end());
        s.emitted_per_feed.push_back(out.size());
        CHECK(dec.position() == i + 1);
        CHECK(dec.emitted() == s.path.size());
        CHECK(dec.window_len() == dec.position() - dec.emitted());
        CHECK(dec.window_len() >= 1);
        const TreeShape shape = dec.tree_shape();
        CHECK(shape.leaves <= hmm.states());
        CHECK(shape.leaves >= 1);
        CHECK(shape.internal <= hmm.states() - 1);
    }
    const auto tail = dec.finish();
    s.path.insert(s.path.end(), tail.begin(), tail.end());
    CHECK(dec.finished());
    s.counters = dec.tree_op_count();
    s.log_prob = dec.log_prob();
    return s;
}

}  // namespace

TEST_CASE("one-state model emits one state per symbol") {
    const Hmm h = testutil::one_state();
    const std::size_t n = 50;
    const SymbolSeq seq = gen_iid(GenSpec::iid({0.5, 0.5}, n, 3));
    StreamDecoder dec(h, seq[0]);
    CHECK(dec.window_len() == 1);
    for (std::size_t i = 1; i < n; ++i) {
        CHECK(dec.feed(seq[i]).size() == 1);
        CHECK(dec.window_len() == 1);
    }
    CHECK(dec.finish().size() == 1);
    CHECK(dec.tree_op_count().created == n);
    CHECK(dec.tree_op_count().deleted + 1 >= n - 1);
    CHECK(dec.tree_op_count().deleted <= n);
}

TEST_CASE("online equals full viterbi and brute force") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto inst = testutil::random_instance(seed + 9000, 1 + seed % 6, 1 + seed % 4,
                                                    1 + seed % testutil::brute_force_cap(1 + seed % 6), 0.25);
        std::pair<StatePath, LogProb> expect;
        try {
            expect = brute_force_decode(inst.hmm, inst.seq);
        } catch (const ImpossibleSequence&) {
            CHECK_THROWS_AS(viterbi_online(inst.hmm, inst.seq), ImpossibleSequence);
            continue;
        }
        INFO("seed " << seed);
        const Streamed s = stream_all(inst.hmm, inst.seq);
        CHECK(s.path == expect.first);
        CHECK(s.log_prob == doctest::Approx(expect.second).epsilon(1e-9));
    }
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto inst = testutil::random_instance(2 * seed, 2 + seed % 9, 2 + seed % 3, 100 + 113 * seed, 0.2);
        const DecodeResult full = viterbi_full(inst.hmm, inst.seq);
        const Streamed s = stream_all(inst.hmm, inst.seq);
        CHECK(s.path == full.path);
        CHECK(s.log_prob == full.log_prob);
        CHECK(joint_log_prob(inst.hmm, inst.seq, s.path) == doctest::Approx(full.log_prob).epsilon(1e-9));
        const std::uint64_t nm = inst.seq.size() * inst.hmm.states();
        CHECK(s.counters.created <= nm);
        CHECK(s.counters.deleted <= s.counters.created);
        CHECK(s.counters.total() <= 4 * nm);
    }
}

TEST_CASE("emitted prefixes survive every extension") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto inst = testutil::random_instance(seed * 2 + 400, 2 + seed % 4, 2, 30, 0.0);
        Sampler rng(seed);
        StreamDecoder dec(inst.hmm, inst.seq[0]);
        StatePath emitted;
        for (std::size_t i = 1; i < inst.seq.size(); ++i) {
            const auto out = dec.feed(inst.seq[i]);
            emitted.insert(emitted.end(), out.begin(), out.end());
            for (int ext = 0; ext < 5; ++ext) {
                SymbolSeq longer(inst.seq.begin(), inst.seq.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                const std::size_t extra = rng.next_u64() % 20;
                for (std::size_t k = 0; k < extra; ++k) longer.push_back(static_cast<Symbol>(rng.next_u64() % 2));
                const DecodeResult full = viterbi_full(inst.hmm, longer);
                INFO("seed " << seed << " position " << i + 1);
                CHECK(std::equal(emitted.begin(), emitted.end(), full.path.begin()));
            }
        }
    }
}

TEST_CASE("two-state coalescence follows the back-pointer configuration") {
    // A coalescence happens exactly on the steps whose two back pointers agree.
    for (double t : {0.1, 1.0 / 17.0, 0.3}) {
        const Hmm h = symmetric_two_state(t, 0.2);
        const SymbolSeq seq = gen_iid(GenSpec::iid({0.5, 0.5}, 20000, 77));
        StreamDecoder dec(h, seq[0]);
        TrellisColumn col = initial_column(h, seq[0]);
        std::size_t mismatches = 0, coalescences = 0;
        for (std::size_t i = 1; i < seq.size(); ++i) {
            col = forward_step(h, col, seq[i]);
            const bool merged = col.backptrs[0] == col.backptrs[1];
            const std::size_t before = dec.emitted();
            dec.feed(seq[i]);
            const bool advanced = dec.emitted() != before;
            coalescences += merged;
            mismatches += merged != advanced;
            if (advanced) CHECK(dec.emitted() == i);
        }
        CHECK(coalescences > 0);
        CHECK(mismatches == 0);
    }
}

TEST_CASE("decoder runs match the walk at the same K") {
    const double t = 1.0 / 17.0, e = 0.2;
    const int K = randwalk::k_parameter(t, e);
    const Hmm h = symmetric_two_state(t, e);
    const SymbolSeq seq = gen_iid(GenSpec::iid({0.5, 0.5}, 1000000, 12));
    StreamDecoder dec(h, seq[0]);
    std::size_t last = 0;
    double sum = 0;
    std::uint64_t runs = 0;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const std::size_t before = dec.emitted();
        dec.feed(seq[i]);
        if (dec.emitted() == before) continue;
        // Gaps of one are immediate re-coalescences, which the walk keeps out
        // of its histogram too.
        if (dec.emitted() - last > 1) {
            sum += static_cast<double>(dec.emitted() - last - 1);
            ++runs;
        }
        last = dec.emitted();
    }
    const double decoder_mean = sum / static_cast<double>(runs);
    const double walk_mean = randwalk::simulate_runs(K, 1000000, 12).mean_length();
    INFO("K=" << K << " decoder mean run " << decoder_mean << " walk mean run " << walk_mean);
    CHECK(decoder_mean == doctest::Approx(walk_mean).epsilon(0.10));
}

TEST_CASE("unreachable states get no leaf") {
    // State 2 is never reachable.
    const Hmm h = Hmm::build(std::vector<double>{0.5, 0.5, 0.0}, {{0.5, 0.5, 0.0}, {0.5, 0.5, 0.0}, {0.3, 0.3, 0.4}},
                             {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
    StreamDecoder dec(h, 0);
    for (int i = 0; i < 30; ++i) {
        dec.feed(static_cast<Symbol>(i % 2));
        CHECK(dec.tree_shape().leaves <= 2);
    }
}

TEST_CASE("failure and misuse") {
    const Hmm h = Hmm::build(std::vector<double>{1.0, 0.0}, {{1.0, 0.0}, {0.0, 1.0}}, {{1.0, 0.0}, {0.0, 1.0}});
    StreamDecoder dec(h, 0);
    dec.feed(0);
    try {
        dec.feed(1);
        FAIL("expected ImpossibleSequence");
    } catch (const ImpossibleSequence& e) {
        CHECK(e.position() == 3);
    }
    CHECK_THROWS_AS(dec.feed(0), InvalidArgument);
    CHECK_THROWS_AS(dec.finish(), InvalidArgument);
    CHECK_THROWS_AS(StreamDecoder(h, 1), ImpossibleSequence);

    StreamDecoder ok(h, 0);
    ok.finish();
    CHECK_THROWS_AS(ok.feed(0), InvalidArgument);
    CHECK_THROWS_AS(ok.finish(), InvalidArgument);
    CHECK_THROWS_AS(StreamDecoder(testutil::one_state(), 5), InvalidArgument);
}

TEST_CASE("back-pointer window") {
    BackPointerWindow w(3);
    for (std::size_t p = 1; p <= 100; ++p) {
        auto col = w.push();
        for (std::size_t j = 0; j < 3; ++j) col[j] = static_cast<StateId>((p + j) % 3);
        if (p % 10 == 0) w.pop_front(7);
    }
    CHECK(w.size() == 30);
    CHECK(w.first_position() == 71);
    for (std::size_t p = 71; p <= 100; ++p) {
        for (std::size_t j = 0; j < 3; ++j) CHECK(w.at(p, static_cast<StateId>(j)) == (p + j) % 3);
    }
}
