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
#include <memory>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "olvit/hmm.hpp"

namespace olvit {

/// Generator algorithm version. Bumped whenever sampling changes in a way
/// that alters the output for a given seed.
inline constexpr const char* kGeneratorVersion = "olvit-gen-1/mt19937_64";

/// Stand-in 4-symbol base composition (A, C, G, T) for i.i.d. DNA-like input.
inline constexpr double kDefaultDnaDistribution[4] = {0.29, 0.21, 0.21, 0.29};

/// Seeded sampler. Uniform doubles use the top 53 bits of each 64-bit draw so
/// output depends only on the mt19937_64 stream, not on the standard library.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    /// Index drawn from a probability vector (need not be normalized exactly).
    std::size_t categorical(std::span<const double> probs);

    std::uint64_t next_u64() { return rng_(); }

private:
    std::mt19937_64 rng_;
};

struct GenSpec {
    enum class Kind { iid, hmm };
    Kind kind = Kind::iid;
    /// Symbol probabilities (iid).
    std::vector<double> distribution;
    /// Source model (hmm).
    std::shared_ptr<const Hmm> source;
    std::size_t length = 0;
    std::uint64_t seed = 0;

    static GenSpec iid(std::vector<double> distribution, std::size_t length, std::uint64_t seed);
    static GenSpec from_hmm(std::shared_ptr<const Hmm> model, std::size_t length, std::uint64_t seed);
};

/// n independent symbols. Throws InvalidArgument if the distribution is not
/// stochastic within 1e-9.
SymbolSeq gen_iid(const GenSpec& spec);

/// Runs the model's generative process: draw the start state, emit, move.
/// Returns the symbols and the generating state path.
std::pair<SymbolSeq, StatePath> gen_from_hmm(const GenSpec& spec);

/// Dispatches on spec.kind; the path is empty for i.i.d. specs.
std::pair<SymbolSeq, StatePath> generate(const GenSpec& spec);

/// Random model for testing: each row is drawn uniformly from the simplex and
/// then each entry is zeroed with probability `zero_fraction` (one entry per
/// row always survives) before renormalizing.
Hmm random_hmm(std::size_t states, std::size_t alphabet_size, double zero_fraction, Sampler& rng);

}  // namespace olvit
