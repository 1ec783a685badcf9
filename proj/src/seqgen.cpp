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

#include "olvit/seqgen.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "olvit/error.hpp"

namespace olvit {

std::size_t Sampler::categorical(std::span<const double> probs) {
    const double u = uniform();
    double cum = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        cum += probs[i];
        last_nonzero = i;
        if (u < cum) return i;
    }
    return last_nonzero;  // rounding left u above the final cumulative sum
}

GenSpec GenSpec::iid(std::vector<double> distribution, std::size_t length, std::uint64_t seed) {
    GenSpec spec;
    spec.kind = Kind::iid;
    spec.distribution = std::move(distribution);
    spec.length = length;
    spec.seed = seed;
    return spec;
}

GenSpec GenSpec::from_hmm(std::shared_ptr<const Hmm> model, std::size_t length, std::uint64_t seed) {
    if (!model) throw InvalidArgument("generator needs a model");
    GenSpec spec;
    spec.kind = Kind::hmm;
    spec.source = std::move(model);
    spec.length = length;
    spec.seed = seed;
    return spec;
}

SymbolSeq gen_iid(const GenSpec& spec) {
    if (spec.kind != GenSpec::Kind::iid) throw InvalidArgument("gen_iid needs an iid spec");
    const auto& dist = spec.distribution;
    if (dist.empty() || dist.size() > kMaxAlphabet) {
        throw InvalidArgument("iid distribution needs 1.." + std::to_string(kMaxAlphabet) + " symbols");
    }
    double sum = 0.0;
    for (double p : dist) {
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("iid probability outside [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
        throw InvalidArgument("iid distribution sums to " + std::to_string(sum));
    }
    Sampler rng(spec.seed);
    SymbolSeq seq(spec.length);
    for (auto& x : seq) x = static_cast<Symbol>(rng.categorical(dist));
    return seq;
}

std::pair<SymbolSeq, StatePath> gen_from_hmm(const GenSpec& spec) {
    if (spec.kind != GenSpec::Kind::hmm || !spec.source) throw InvalidArgument("gen_from_hmm needs a model");
    const Hmm& hmm = *spec.source;
    Sampler rng(spec.seed);
    SymbolSeq seq(spec.length);
    StatePath path(spec.length);
    if (spec.length == 0) return {seq, path};
    std::size_t state = rng.categorical(hmm.initial_probs());
    for (std::size_t i = 0; i < spec.length; ++i) {
        if (i > 0) state = rng.categorical(hmm.transition_probs(state));
        path[i] = static_cast<StateId>(state);
        seq[i] = static_cast<Symbol>(rng.categorical(hmm.emission_probs(state)));
    }
    return {std::move(seq), std::move(path)};
}

std::pair<SymbolSeq, StatePath> generate(const GenSpec& spec) {
    if (spec.kind == GenSpec::Kind::iid) return {gen_iid(spec), {}};
    return gen_from_hmm(spec);
}

namespace {

std::vector<double> random_row(std::size_t size, double zero_fraction, Sampler& rng) {
    // Uniform on the simplex via normalized exponentials.
    std::vector<double> row(size);
    for (auto& v : row) v = -std::log(1.0 - rng.uniform());
    const std::size_t keep = rng.categorical(std::vector<double>(size, 1.0 / static_cast<double>(size)));
    for (std::size_t i = 0; i < size; ++i) {
        if (i != keep && rng.uniform() < zero_fraction) row[i] = 0.0;
    }
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    if (sum <= 0.0) {
        row.assign(size, 0.0);
        row[keep] = 1.0;
        return row;
    }
    for (auto& v : row) v /= sum;
    return row;
}

}  // namespace

Hmm random_hmm(std::size_t states, std::size_t alphabet_size, double zero_fraction, Sampler& rng) {
    if (states == 0 || alphabet_size == 0) throw InvalidArgument("random_hmm needs positive sizes");
    const std::vector<double> initial = random_row(states, zero_fraction, rng);
    ProbMatrix trans, emit;
    for (std::size_t k = 0; k < states; ++k) trans.push_back(random_row(states, zero_fraction, rng));
    for (std::size_t j = 0; j < states; ++j) emit.push_back(random_row(alphabet_size, zero_fraction, rng));
    return Hmm::build(initial, trans, emit);
}

}  // namespace olvit
