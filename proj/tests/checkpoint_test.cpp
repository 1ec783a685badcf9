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

#include "doctest.h"
#include "olvit/checkpoint.hpp"
#include "olvit/error.hpp"
#include "olvit/trellis.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace olvit;

TEST_CASE("ceil_sqrt") {
    CHECK(ceil_sqrt(0) == 0);
    CHECK(ceil_sqrt(1) == 1);
    CHECK(ceil_sqrt(2) == 2);
    CHECK(ceil_sqrt(4) == 2);
    CHECK(ceil_sqrt(5) == 3);
    CHECK(ceil_sqrt(10000) == oracle::kCeilSqrt10000);
    CHECK(ceil_sqrt(10001) == oracle::kCeilSqrt10001);
    const std::size_t big = std::size_t{4294967295};
    CHECK(ceil_sqrt(big * big) == big);
    CHECK(ceil_sqrt(big * big + 1) == big + 1);
}

TEST_CASE("plan partitions the positions") {
    for (std::size_t n : {1, 2, 7, 100, 101, 9999}) {
        for (std::optional<std::size_t> L : {std::optional<std::size_t>{}, std::optional<std::size_t>{1},
                                             std::optional<std::size_t>{3}, std::optional<std::size_t>{n + 5}}) {
            const CheckpointPlan p = CheckpointPlan::make(n, L);
            CHECK(p.block_len == std::min(L.value_or(ceil_sqrt(n)), n));
            REQUIRE(p.blocks() >= 1);
            CHECK(p.starts.front() == 1);
            CHECK(p.ends.back() == n);
            for (std::size_t b = 0; b < p.blocks(); ++b) {
                CHECK(p.starts[b] <= p.ends[b]);
                CHECK(p.ends[b] - p.starts[b] + 1 <= p.block_len);
                if (b > 0) CHECK(p.starts[b] == p.ends[b - 1] + 1);
            }
        }
    }
    CHECK_THROWS_AS(CheckpointPlan::make(10, 0), InvalidArgument);
    CHECK_THROWS_AS(CheckpointPlan::make(0), InvalidArgument);
}

TEST_CASE("forward step counts") {
    const Hmm h = symmetric_two_state(0.1, 0.2);
    auto steps = [&](std::size_t n, std::optional<std::size_t> L) {
        const SymbolSeq seq = gen_iid(GenSpec::iid({0.5, 0.5}, n, n));
        return viterbi_checkpoint(h, seq, L).forward_steps;
    };
    CHECK(steps(1, 1) == oracle::kCheckpointSteps_1_1);
    CHECK(steps(1, 7) == oracle::kCheckpointSteps_1_1);
    CHECK(steps(100, 10) == oracle::kCheckpointSteps_100_10);
    CHECK(steps(100, 100) == oracle::kCheckpointSteps_100_100);
    CHECK(steps(37, 5) == oracle::kCheckpointSteps_37_5);
    CHECK(steps(10000, std::nullopt) == oracle::kCheckpointSteps_10000_100);
}

TEST_CASE("memory and work bounds") {
    const Hmm h = testutil::casino();
    for (std::size_t n : {1, 2, 3, 10, 99, 100, 101, 1000, 10000}) {
        const SymbolSeq seq = gen_iid(GenSpec::iid(std::vector<double>(6, 1.0 / 6), n, 7 * n));
        for (std::optional<std::size_t> L : {std::optional<std::size_t>{}, std::optional<std::size_t>{1},
                                             std::optional<std::size_t>{3}, std::optional<std::size_t>{n}}) {
            DecodeOptions opts;
            opts.trace_stride = 1;
            const DecodeResult r = viterbi_checkpoint(h, seq, L, opts);
            const CheckpointPlan p = CheckpointPlan::make(n, L);
            INFO("n=" << n << " L=" << p.block_len);
            CHECK(r.forward_steps <= 2 * n);
            CHECK(r.forward_steps >= n);
            CHECK(r.trace.peak() <= p.blocks() + p.block_len + 1);
            if (!L) CHECK(r.trace.peak() <= 2 * ceil_sqrt(n) + 1);
        }
    }
    const SymbolSeq seq = gen_iid(GenSpec::iid({0.5, 0.5}, 10000, 1));
    const DecodeResult r = viterbi_checkpoint(symmetric_two_state(0.1, 0.2), seq);
    CHECK(r.trace.peak() <= 201);
    CHECK(r.forward_steps <= 20000);
}

TEST_CASE("checkpoint equals brute force and full viterbi") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const std::size_t n = 1 + seed % testutil::brute_force_cap(1 + seed % 6);
        const auto inst = testutil::random_instance(seed + 5000, 1 + seed % 6, 1 + seed % 4, n, 0.25);
        std::pair<StatePath, LogProb> expect;
        bool feasible = true;
        try {
            expect = brute_force_decode(inst.hmm, inst.seq);
        } catch (const ImpossibleSequence&) {
            feasible = false;
        }
        for (std::size_t L : {std::size_t{1}, std::size_t{2}, std::size_t{3}, n}) {
            INFO("seed " << seed << " L " << L);
            if (!feasible) {
                CHECK_THROWS_AS(viterbi_checkpoint(inst.hmm, inst.seq, L), ImpossibleSequence);
                continue;
            }
            const DecodeResult r = viterbi_checkpoint(inst.hmm, inst.seq, L);
            CHECK(r.path == expect.first);
            CHECK(r.log_prob == doctest::Approx(expect.second).epsilon(1e-9));
        }
    }
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto inst = testutil::random_instance(seed * 2 + 80, 2 + seed % 7, 2 + seed % 3, 50 + 97 * seed, 0.2);
        const DecodeResult full = viterbi_full(inst.hmm, inst.seq);
        for (std::optional<std::size_t> L : {std::optional<std::size_t>{}, std::optional<std::size_t>{1},
                                             std::optional<std::size_t>{7}, std::optional<std::size_t>{inst.seq.size()}}) {
            const DecodeResult r = viterbi_checkpoint(inst.hmm, inst.seq, L);
            CHECK(r.path == full.path);
            CHECK(r.log_prob == full.log_prob);
        }
    }
}
