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

#include "olvit/randwalk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "olvit/error.hpp"

namespace olvit::randwalk {

namespace {

void check_K(int K) {
    if (K < 2) throw InvalidArgument("K must be >= 2, got " + std::to_string(K));
}

// Fair coin flips drawn 64 at a time.
class CoinStream {
public:
    explicit CoinStream(std::uint64_t seed) : rng_(seed) {}

    bool flip() {
        if (left_ == 0) {
            bits_ = rng_();
            left_ = 64;
        }
        const bool up = bits_ & 1u;
        bits_ >>= 1;
        --left_;
        return up;
    }

private:
    std::mt19937_64 rng_;
    std::uint64_t bits_ = 0;
    int left_ = 0;
};

// Runs the barrier walk and calls on_run(length) for each completed run.
// Returns the length of the unfinished final run (0 if none is open).
template <typename OnRun, typename OnImmediate>
std::uint64_t walk(int K, std::uint64_t steps, std::uint64_t seed, OnRun on_run, OnImmediate on_immediate) {
    CoinStream coins(seed);
    int x = 1;
    std::uint64_t len = 0;
    int restart_from = -1;  // barrier just hit, or -1 while inside
    for (std::uint64_t i = 0; i < steps; ++i) {
        const bool up = coins.flip();
        if (restart_from == 0) {
            if (up) {
                x = 1;
                restart_from = -1;
            } else {
                on_immediate();
            }
            continue;
        }
        if (restart_from == K) {
            if (!up) {
                x = K - 1;
                restart_from = -1;
            } else {
                on_immediate();
            }
            continue;
        }
        x += up ? 1 : -1;
        ++len;
        if (x == 0 || x == K) {
            on_run(len);
            len = 0;
            restart_from = x;
        }
    }
    return restart_from == -1 ? len : 0;
}

}  // namespace

int k_parameter(double t, double e) {
    if (!(t > 0.0 && t < 0.5)) throw InvalidArgument("t must lie in (0, 1/2)");
    if (!(e > 0.0 && e < 0.5)) throw InvalidArgument("e must lie in (0, 1/2)");
    const double ratio = 2.0 * (std::log(1.0 - t) - std::log(t)) / (std::log(1.0 - e) - std::log(e));
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) return static_cast<int>(nearest);
    return static_cast<int>(std::ceil(ratio));
}

double expected_run_length(int K) {
    check_K(K);
    return static_cast<double>(K - 1);
}

namespace {

// (4/K) s^2 c^{2l} <= Pr <= c^{2l} for walks whose two barriers are hit after
// the same step parity; (2/K) s^2 (1 + c) c^{2l} <= Pr <= 2 c^{2l} otherwise.
ProbBounds bucket_bounds(int K, int ell, bool same_parity) {
    check_K(K);
    if (ell < 0) throw InvalidArgument("run bucket index must be >= 0");
    const double angle = std::numbers::pi / K;
    const double c = std::cos(angle);
    const double s2 = std::sin(angle) * std::sin(angle);
    const double decay = std::pow(c, 2.0 * ell);
    ProbBounds b;
    if (same_parity) {
        b.lower = 4.0 / K * s2 * decay;
        b.upper = decay;
    } else {
        b.lower = 2.0 / K * s2 * (1.0 + c) * decay;
        b.upper = 2.0 * decay;
    }
    b.upper = std::min(b.upper, 1.0);
    return b;
}

}  // namespace

ProbBounds run_length_prob_bounds(int K, int ell) { return bucket_bounds(K, ell, K % 2 == 1); }

ProbBounds parity_corrected_prob_bounds(int K, int ell) { return bucket_bounds(K, ell, K % 2 == 0); }

MemoryPrediction expected_max_memory(int K, double n) {
    check_K(K);
    if (!(n >= 2.0)) throw InvalidArgument("n must be >= 2");
    MemoryPrediction p;
    p.K = K;
    p.n = n;
    p.exact_constant = 1.0 / std::log(1.0 / std::cos(std::numbers::pi / K));
    p.approx_constant = 2.0 * K * K / (std::numbers::pi * std::numbers::pi);
    p.predicted_expected_max = p.exact_constant * std::log(n);
    return p;
}

double expected_max_of_runs(double a, double n) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("decay base must lie in (0, 1)");
    if (!(n >= 2.0)) throw InvalidArgument("n must be >= 2");
    return std::log(n) / std::log(1.0 / a);
}

double RunLengthDist::mean_length() const {
    if (total_runs == 0) throw InvalidArgument("no completed runs");
    double sum = 0.0;
    for (std::size_t len = 1; len < histogram.size(); ++len) {
        sum += static_cast<double>(len) * static_cast<double>(histogram[len]);
    }
    return sum / static_cast<double>(total_runs);
}

std::uint64_t RunLengthDist::bucket_count(int ell) const {
    std::uint64_t count = 0;
    for (std::size_t len : {2 * static_cast<std::size_t>(ell) + 1, 2 * static_cast<std::size_t>(ell) + 2}) {
        if (len < histogram.size()) count += histogram[len];
    }
    return count;
}

double RunLengthDist::prob_bucket(int ell) const {
    if (total_runs == 0) throw InvalidArgument("no completed runs");
    return static_cast<double>(bucket_count(ell)) / static_cast<double>(total_runs);
}

RunLengthDist simulate_runs(int K, std::uint64_t total_steps, std::uint64_t seed) {
    check_K(K);
    if (total_steps == 0) throw InvalidArgument("total_steps must be >= 1");
    RunLengthDist dist;
    dist.K = K;
    dist.steps = total_steps;
    dist.seed = seed;
    walk(
        K, total_steps, seed,
        [&](std::uint64_t len) {
            if (len >= dist.histogram.size()) dist.histogram.resize(len + 1, 0);
            ++dist.histogram[len];
            ++dist.total_runs;
        },
        [&] { ++dist.immediate_recoalescences; });
    return dist;
}

std::uint64_t simulate_max_run(int K, std::uint64_t steps, std::uint64_t seed) {
    check_K(K);
    std::uint64_t best = 0;
    const std::uint64_t open = walk(
        K, steps, seed, [&](std::uint64_t len) { best = std::max(best, len); }, [] {});
    return std::max(best, open);
}

}  // namespace olvit::randwalk
