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
#include "olvit/error.hpp"
#include "olvit/trellis.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace olvit;

TEST_CASE("initial column") {
    const Hmm h = symmetric_two_state(0.1, 0.2);
    const TrellisColumn c = initial_column(h, 0);
    CHECK(c.position == 1);
    CHECK(c.backptrs.empty());
    CHECK(c.scores[0] == doctest::Approx(oracle::kInitialScoreA).epsilon(1e-15));
    CHECK(c.scores[1] == doctest::Approx(oracle::kInitialScoreB).epsilon(1e-15));

    const Hmm mute = Hmm::build(std::vector<double>{0.5, 0.5}, {{0.5, 0.5}, {0.5, 0.5}}, {{1.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(initial_column(mute, 1), ImpossibleSequence);
    try {
        initial_column(mute, 1);
    } catch (const ImpossibleSequence& e) {
        CHECK(e.position() == 1);
    }
}

TEST_CASE("forward step follows the recurrence") {
    const Hmm h = symmetric_two_state(0.1, 0.2);
    const TrellisColumn c1 = initial_column(h, 0);
    const TrellisColumn c2 = forward_step(h, c1, 1);
    CHECK(c2.position == 2);
    for (std::size_t j = 0; j < 2; ++j) {
        const double a = c1.scores[0] + h.transition(0, j);
        const double b = c1.scores[1] + h.transition(1, j);
        CHECK(c2.scores[j] == std::max(a, b) + h.emission(j, 1));
        CHECK(c2.backptrs[j] == (a >= b ? 0 : 1));
    }
    CHECK_THROWS_AS(forward_step(h, c1, 2), InvalidArgument);
}

TEST_CASE("impossible sequence reports its position") {
    // State 0 emits only symbol 0 and can never leave; state 1 is unreachable.
    const Hmm h = Hmm::build(std::vector<double>{1.0, 0.0}, {{1.0, 0.0}, {0.0, 1.0}}, {{1.0, 0.0}, {0.0, 1.0}});
    try {
        viterbi_full(h, SymbolSeq{0, 0, 1, 0});
        FAIL("expected ImpossibleSequence");
    } catch (const ImpossibleSequence& e) {
        CHECK(e.position() == 3);
    }
}

TEST_CASE("best_state breaks ties toward the smallest index") {
    const std::vector<LogProb> s{-2.0, -1.0, -1.0};
    CHECK(best_state(s, 1) == 1);
    CHECK_THROWS_AS(best_state(std::vector<LogProb>(3, kLogZero), 4), ImpossibleSequence);
}

TEST_CASE("full viterbi on a fixed die instance") {
    const Hmm h = testutil::casino();
    const SymbolSeq seq = testutil::symbols(h, oracle::kCasinoRolls);
    const DecodeResult r = viterbi_full(h, seq);
    CHECK(testutil::labels(h, r.path) == oracle::kCasinoPath);
    CHECK(r.log_prob == doctest::Approx(oracle::kCasinoLogProb).epsilon(1e-12));
    CHECK(r.forward_steps == seq.size());
    CHECK(r.trace.peak() == seq.size());
}

TEST_CASE("full viterbi matches brute force") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto inst = testutil::random_instance(seed, 1 + seed % 6, 1 + seed % 4, 1 + seed % testutil::brute_force_cap(1 + seed % 6), 0.25);
        std::pair<StatePath, LogProb> expect;
        try {
            expect = brute_force_decode(inst.hmm, inst.seq);
        } catch (const ImpossibleSequence&) {
            CHECK_THROWS_AS(viterbi_full(inst.hmm, inst.seq), ImpossibleSequence);
            continue;
        }
        const DecodeResult r = viterbi_full(inst.hmm, inst.seq);
        INFO("seed " << seed);
        CHECK(r.path == expect.first);
        CHECK(r.log_prob == doctest::Approx(expect.second).epsilon(1e-9));
        CHECK(joint_log_prob(inst.hmm, inst.seq, r.path) == doctest::Approx(r.log_prob).epsilon(1e-9));
    }
}

TEST_CASE("full viterbi trace and kernels") {
    const auto inst = testutil::random_instance(4, 7, 3, 500, 0.1);
    DecodeOptions opts;
    opts.trace_stride = 1;
    const DecodeResult r = viterbi_full(inst.hmm, inst.seq, opts);
    REQUIRE(r.trace.samples().size() == 500);
    for (std::size_t i = 0; i < 500; ++i) CHECK(r.trace.samples()[i] == i + 1);
    for (const auto* k : kernel::available()) {
        DecodeOptions o;
        o.kernel = k;
        const DecodeResult rk = viterbi_full(inst.hmm, inst.seq, o);
        CHECK(rk.path == r.path);
        CHECK(rk.log_prob == r.log_prob);
    }
}
