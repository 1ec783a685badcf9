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

// Memory model of the on-line decoder for symmetric two-state HMMs.
//
// With uniform i.i.d. input, the scaled score difference of the two states
// performs a +-1 random walk. While it stays strictly inside (0, K) the two
// back pointers stay parallel and nothing can be emitted; reaching either
// barrier is a coalescence. A "run" is the number of walk steps from the
// restart point (1 or K-1) to absorption, and the retained table grows with
// the longest run.

#include <cstdint>
#include <utility>
#include <vector>

namespace olvit::randwalk {

/// ceil(2 (ln(1-t) - ln t) / (ln(1-e) - ln e)) for 0 < t, e < 1/2.
/// A ratio within 1e-9 of an integer is taken as that integer, so exact
/// parameter choices are not pushed up by rounding.
int k_parameter(double t, double e);

/// Mean run length, K - 1. Requires K >= 2.
double expected_run_length(int K);

struct ProbBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Bounds on Pr(run length is 2l+1 or 2l+2).
/// Odd K:  (4/K) sin^2(pi/K) c^{2l} <= Pr <= c^{2l}
/// Even K: (2/K) sin^2(pi/K) (1 + cos(pi/K)) c^{2l} <= Pr <= 2 c^{2l}
/// with c = cos(pi/K); the upper bound is clamped to 1.
ProbBounds run_length_prob_bounds(int K, int ell);

/// The same two bound shapes with the odd/even assignment swapped. From 1,
/// barrier 0 is reached after an odd number of steps and barrier K after a
/// number of steps with the parity of K - 1, so for even K both barriers
/// share a parity and the (4/K) form applies; for odd K they differ and the
/// (1 + cos) form applies. The exact run-length distribution satisfies these
/// for every K; run_length_prob_bounds does not hold for odd K.
ProbBounds parity_corrected_prob_bounds(int K, int ell);

struct MemoryPrediction {
    int K = 0;
    double n = 0.0;
    /// 1 / ln(1 / cos(pi/K))
    double exact_constant = 0.0;
    /// 2 K^2 / pi^2
    double approx_constant = 0.0;
    /// exact_constant * ln n
    double predicted_expected_max = 0.0;
};

/// Leading-order expected maximum run length over a length-n input.
/// Requires K >= 2 and n >= 2.
MemoryPrediction expected_max_memory(int K, double n);

/// log_{1/a} n: leading term of the expected maximum of runs with tails
/// decaying like a^k. Requires 0 < a < 1 and n >= 2.
double expected_max_of_runs(double a, double n);

/// Identifier of the generator behind every simulation.
inline constexpr const char* kRngAlgorithm = "mt19937_64";

struct RunLengthDist {
    int K = 0;
    /// histogram[len] = completed runs of that length (index 0 unused).
    std::vector<std::uint64_t> histogram;
    std::uint64_t total_runs = 0;
    /// Restart steps that landed straight back on a barrier.
    std::uint64_t immediate_recoalescences = 0;
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;

    double mean_length() const;
    /// Fraction of runs with length 2l+1 or 2l+2.
    double prob_bucket(int ell) const;
    /// Runs counted in bucket l.
    std::uint64_t bucket_count(int ell) const;
};

/// Simulates `total_steps` steps of the barrier walk on (0, K).
///
/// The walk starts at 1. A completed run is recorded on absorption. The next
/// step is a restart step: after barrier 0 it moves to 1 or re-absorbs (an
/// immediate re-coalescence), after barrier K it moves to K-1 or re-absorbs.
/// Restart steps count toward `total_steps` but not toward run lengths; the
/// unfinished final run is dropped. Deterministic for a given seed.
RunLengthDist simulate_runs(int K, std::uint64_t total_steps, std::uint64_t seed);

/// Longest run seen in a walk of `steps` steps under the same rules, with
/// the unfinished final run included. One sample of E[max] over length n.
std::uint64_t simulate_max_run(int K, std::uint64_t steps, std::uint64_t seed);

}  // namespace olvit::randwalk
