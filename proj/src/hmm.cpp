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

#include "olvit/hmm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "olvit/error.hpp"

namespace olvit {

namespace {

// Printable characters usable as symbols in text files; '#' and '>' are
// reserved for comments and sequence headers.
constexpr std::string_view kSymbolChars =
    "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "!\"$%&'()*+,-./:;<=?@[\\]^_`{|}~";

LogProb to_log(double p) { return p == 0.0 ? kLogZero : std::log(p); }

void check_stochastic(std::span<const double> row, const std::string& what) {
    double sum = 0.0;
    for (double p : row) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ModelError(what + ": entry " + std::to_string(p) + " outside [0,1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
        throw ModelError(what + ": sums to " + std::to_string(sum) + ", expected 1");
    }
}

void check_open_half(double x, const char* name) {
    if (!(x > 0.0 && x < 0.5)) {
        throw InvalidArgument(std::string(name) + " must lie in (0, 1/2), got " + std::to_string(x));
    }
}

}  // namespace

std::string default_alphabet(std::size_t size) {
    if (size > kSymbolChars.size()) {
        throw InvalidArgument("no default alphabet for " + std::to_string(size) + " symbols");
    }
    return std::string(kSymbolChars.substr(0, size));
}

Hmm Hmm::build(std::span<const double> initial, const ProbMatrix& transitions,
               const ProbMatrix& emissions, std::string alphabet, std::vector<std::string> labels) {
    const std::size_t m = initial.size();
    if (m == 0) throw ModelError("model needs at least one state");
    if (m > kMaxStates) throw ModelError("too many states: " + std::to_string(m));
    if (transitions.size() != m) {
        throw ModelError("transition table has " + std::to_string(transitions.size()) +
                         " rows, expected " + std::to_string(m));
    }
    if (emissions.size() != m) {
        throw ModelError("emission table has " + std::to_string(emissions.size()) +
                         " rows, expected " + std::to_string(m));
    }
    const std::size_t a = emissions.front().size();
    if (a == 0) throw ModelError("alphabet must have at least one symbol");
    if (a > kMaxAlphabet) throw ModelError("alphabet too large: " + std::to_string(a));
    if (alphabet.empty()) alphabet = default_alphabet(a);
    if (alphabet.size() != a) {
        throw ModelError("alphabet declares " + std::to_string(alphabet.size()) +
                         " symbols but emission rows have " + std::to_string(a));
    }
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        const char c = alphabet[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '#' || c == '>') {
            throw ModelError(std::string("invalid alphabet character '") + c + "'");
        }
        if (alphabet.find(c, i + 1) != std::string::npos) {
            throw ModelError(std::string("duplicate alphabet character '") + c + "'");
        }
    }
    if (!labels.empty() && labels.size() != m) {
        throw ModelError("label count " + std::to_string(labels.size()) + " differs from state count");
    }

    check_stochastic(initial, "initial distribution");
    Hmm hmm;
    hmm.m_ = m;
    hmm.alphabet_ = std::move(alphabet);
    hmm.labels_ = std::move(labels);
    hmm.initial_.assign(initial.begin(), initial.end());
    hmm.trans_.reserve(m * m);
    hmm.emit_.reserve(m * a);
    for (std::size_t k = 0; k < m; ++k) {
        if (transitions[k].size() != m) {
            throw ModelError("transition row " + std::to_string(k) + " has " +
                             std::to_string(transitions[k].size()) + " entries, expected " +
                             std::to_string(m));
        }
        check_stochastic(transitions[k], "transition row " + std::to_string(k));
        hmm.trans_.insert(hmm.trans_.end(), transitions[k].begin(), transitions[k].end());
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (emissions[j].size() != a) {
            throw ModelError("emission row " + std::to_string(j) + " has " +
                             std::to_string(emissions[j].size()) + " entries, expected " +
                             std::to_string(a));
        }
        check_stochastic(emissions[j], "emission row " + std::to_string(j));
        hmm.emit_.insert(hmm.emit_.end(), emissions[j].begin(), emissions[j].end());
    }

    hmm.log_initial_.resize(m);
    std::transform(hmm.initial_.begin(), hmm.initial_.end(), hmm.log_initial_.begin(), to_log);
    hmm.log_trans_.resize(m * m);
    std::transform(hmm.trans_.begin(), hmm.trans_.end(), hmm.log_trans_.begin(), to_log);
    hmm.log_emit_by_symbol_.resize(a * m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t x = 0; x < a; ++x) {
            hmm.log_emit_by_symbol_[x * m + j] = to_log(hmm.emit_[j * a + x]);
        }
    }
    return hmm;
}

std::optional<Symbol> Hmm::symbol_code(char c) const noexcept {
    const auto pos = alphabet_.find(c);
    if (pos == std::string::npos) return std::nullopt;
    return static_cast<Symbol>(pos);
}

void Hmm::check_symbols(std::span<const Symbol> seq) const {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] >= alphabet_size()) {
            throw InvalidArgument("symbol " + std::to_string(seq[i]) + " at position " +
                                  std::to_string(i + 1) + " outside alphabet of size " +
                                  std::to_string(alphabet_size()));
        }
    }
}

Hmm symmetric_two_state(double t, double e) {
    check_open_half(t, "t");
    check_open_half(e, "e");
    const std::vector<double> initial{0.5, 0.5};
    return Hmm::build(initial, {{1.0 - t, t}, {t, 1.0 - t}}, {{1.0 - e, e}, {e, 1.0 - e}}, "01",
                      {"A", "B"});
}

Hmm symmetric_multi_state(std::size_t m, double t, double e) {
    if (m < 2) throw InvalidArgument("symmetric_multi_state needs m >= 2");
    if (!(t > 0.0 && t < 1.0) || !(e > 0.0 && e < 1.0)) {
        throw InvalidArgument("symmetric_multi_state needs t, e in (0, 1)");
    }
    const double other_t = t / static_cast<double>(m - 1);
    const double other_e = e / static_cast<double>(m - 1);
    ProbMatrix trans(m, std::vector<double>(m, other_t));
    ProbMatrix emit(m, std::vector<double>(m, other_e));
    for (std::size_t j = 0; j < m; ++j) {
        trans[j][j] = 1.0 - t;
        emit[j][j] = 1.0 - e;
    }
    const std::vector<double> initial(m, 1.0 / static_cast<double>(m));
    return Hmm::build(initial, trans, emit);
}

LogProb joint_log_prob(const Hmm& hmm, std::span<const Symbol> seq, std::span<const StateId> path) {
    if (seq.size() != path.size()) {
        throw InvalidArgument("path length " + std::to_string(path.size()) +
                              " differs from sequence length " + std::to_string(seq.size()));
    }
    hmm.check_symbols(seq);
    for (StateId s : path) {
        if (s >= hmm.states()) throw InvalidArgument("state " + std::to_string(s) + " out of range");
    }
    if (seq.empty()) return 0.0;
    LogProb total = hmm.initial(path[0]) + hmm.emission(path[0], seq[0]);
    for (std::size_t i = 1; i < seq.size(); ++i) {
        total = total + hmm.transition(path[i - 1], path[i]);
        total = total + hmm.emission(path[i], seq[i]);
    }
    return total;
}

namespace {

// Depth-first enumeration with running prefix sums. The additions happen in
// the same left-to-right order as joint_log_prob, so totals are bit-identical.
struct BruteForce {
    const Hmm& hmm;
    std::span<const Symbol> seq;
    StatePath current;
    StatePath best;
    LogProb best_score = kLogZero;

    static bool reverse_less(const StatePath& a, const StatePath& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    }

    void visit(std::size_t pos, LogProb prefix) {
        if (pos == seq.size()) {
            if (prefix > best_score || (prefix == best_score && reverse_less(current, best))) {
                best_score = prefix;
                best = current;
            }
            return;
        }
        for (std::size_t j = 0; j < hmm.states(); ++j) {
            current[pos] = static_cast<StateId>(j);
            LogProb next = pos == 0 ? hmm.initial(j) + hmm.emission(j, seq[0])
                                    : (prefix + hmm.transition(current[pos - 1], j)) +
                                          hmm.emission(j, seq[pos]);
            if (next == kLogZero) continue;
            visit(pos + 1, next);
        }
    }
};

}  // namespace

std::pair<StatePath, LogProb> brute_force_decode(const Hmm& hmm, std::span<const Symbol> seq) {
    if (seq.empty()) throw InvalidArgument("brute_force_decode: empty sequence");
    if (seq.size() > kBruteForceMaxLength) {
        throw InvalidArgument("brute_force_decode: length " + std::to_string(seq.size()) +
                              " exceeds " + std::to_string(kBruteForceMaxLength));
    }
    std::uint64_t paths = 1;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        paths *= hmm.states();
        if (paths > kBruteForceMaxPaths) {
            throw InvalidArgument("brute_force_decode: more than 2^24 paths to enumerate");
        }
    }
    hmm.check_symbols(seq);
    BruteForce search{hmm, seq, StatePath(seq.size()), {}, kLogZero};
    search.visit(0, 0.0);
    if (search.best.empty()) throw ImpossibleSequence(seq.size(), "no path has nonzero probability");
    return {std::move(search.best), search.best_score};
}

}  // namespace olvit
