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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace olvit {

/// Natural-log probability. Negative infinity encodes probability zero.
using LogProb = double;

/// Dense state index in [0, m).
using StateId = std::uint16_t;

/// Dense symbol code in [0, alphabet_size).
using Symbol = std::uint8_t;

using StatePath = std::vector<StateId>;
using SymbolSeq = std::vector<Symbol>;

/// Row-major probability table as read from a model description.
using ProbMatrix = std::vector<std::vector<double>>;

inline constexpr LogProb kLogZero = -std::numeric_limits<double>::infinity();

/// Largest state count representable by StateId.
inline constexpr std::size_t kMaxStates = std::numeric_limits<StateId>::max();

/// Largest alphabet representable by Symbol.
inline constexpr std::size_t kMaxAlphabet = 256;

/// Row sums of every stochastic vector must be within this of 1.
inline constexpr double kRowSumTolerance = 1e-9;

/// Immutable, validated hidden Markov model. Probabilities are stored both in
/// natural-log space (for decoding) and linear space (for sampling).
///
/// Transitions are indexed (source, target); emissions (state, symbol).
class Hmm {
public:
    /// Validates the tables and converts them to log space.
    /// `alphabet` maps symbol codes to characters; empty picks a default
    /// printable alphabet ("01", "0123", ...). `labels` optionally names states.
    static Hmm build(std::span<const double> initial, const ProbMatrix& transitions,
                     const ProbMatrix& emissions, std::string alphabet = {},
                     std::vector<std::string> labels = {});

    std::size_t states() const noexcept { return m_; }
    std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
    const std::string& alphabet() const noexcept { return alphabet_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    LogProb initial(std::size_t state) const { return log_initial_[state]; }
    LogProb transition(std::size_t from, std::size_t to) const { return log_trans_[from * m_ + to]; }
    LogProb emission(std::size_t state, Symbol symbol) const {
        return log_emit_by_symbol_[std::size_t{symbol} * m_ + state];
    }

    std::span<const LogProb> initial_column() const noexcept { return log_initial_; }
    /// Row-major m*m log transition table.
    std::span<const LogProb> transition_table() const noexcept { return log_trans_; }
    /// log e_j(symbol) for every state j, contiguous.
    std::span<const LogProb> emission_column(Symbol symbol) const {
        return {log_emit_by_symbol_.data() + std::size_t{symbol} * m_, m_};
    }

    std::span<const double> initial_probs() const noexcept { return initial_; }
    std::span<const double> transition_probs(std::size_t from) const {
        return {trans_.data() + from * m_, m_};
    }
    std::span<const double> emission_probs(std::size_t state) const {
        return {emit_.data() + state * alphabet_.size(), alphabet_.size()};
    }

    /// Code of `c` in the alphabet, if present.
    std::optional<Symbol> symbol_code(char c) const noexcept;

    /// Throws InvalidArgument unless every symbol is < alphabet_size().
    void check_symbols(std::span<const Symbol> seq) const;

private:
    Hmm() = default;

    std::size_t m_ = 0;
    std::string alphabet_;
    std::vector<std::string> labels_;
    std::vector<double> initial_;
    std::vector<double> trans_;
    std::vector<double> emit_;
    std::vector<LogProb> log_initial_;
    std::vector<LogProb> log_trans_;
    std::vector<LogProb> log_emit_by_symbol_;
};

/// Validates and builds a model from linear-space tables.
inline Hmm build_hmm(std::span<const double> initial, const ProbMatrix& transitions,
                     const ProbMatrix& emissions) {
    return Hmm::build(initial, transitions, emissions);
}

/// Default alphabet of the given size: digits, then letters, then punctuation.
std::string default_alphabet(std::size_t size);

/// Two-state, two-symbol model: self-transition 1-t, emission of the favored
/// symbol 1-e, uniform start. Requires 0 < t < 1/2 and 0 < e < 1/2.
Hmm symmetric_two_state(double t, double e);

/// m-state, m-symbol generalization: state j emits symbol j with probability
/// 1-e and each other symbol with e/(m-1); stays with probability 1-t and
/// moves to each other state with t/(m-1); uniform start.
Hmm symmetric_multi_state(std::size_t m, double t, double e);

/// log Pr(seq, path). Negative infinity when any factor is zero.
LogProb joint_log_prob(const Hmm& hmm, std::span<const Symbol> seq, std::span<const StateId> path);

/// Limits for brute_force_decode: n <= 12 and m^n <= 2^24.
inline constexpr std::size_t kBruteForceMaxLength = 12;
inline constexpr std::uint64_t kBruteForceMaxPaths = std::uint64_t{1} << 24;

/// Exhaustive most-probable-path search. Among equally probable paths the one
/// that is smallest when compared from the last position backwards wins,
/// which is the order produced by smallest-index backtracking.
std::pair<StatePath, LogProb> brute_force_decode(const Hmm& hmm, std::span<const Symbol> seq);

}  // namespace olvit
