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

#include "olvit/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "olvit/error.hpp"

namespace olvit {

namespace {

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> words;
    std::istringstream ss(line);
    for (std::string w; ss >> w;) words.push_back(std::move(w));
    return words;
}

double parse_prob(const std::string& word, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
    if (ec != std::errc() || ptr != word.data() + word.size()) {
        throw ParseError("not a number: '" + word + "'", line);
    }
    return v;
}

std::size_t parse_count(const std::string& text, std::size_t line) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v == 0) {
        throw ParseError("invalid state count '" + text + "'", line);
    }
    return v;
}

std::vector<double> parse_row(const std::vector<std::string>& words, std::size_t expected, std::size_t line) {
    if (words.size() - 1 != expected) {
        throw ParseError("'" + words[0] + "' expects " + std::to_string(expected) + " values, got " +
                             std::to_string(words.size() - 1),
                         line);
    }
    std::vector<double> row;
    row.reserve(expected);
    for (std::size_t i = 1; i < words.size(); ++i) row.push_back(parse_prob(words[i], line));
    return row;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Hmm read_model(std::istream& in) {
    std::size_t m = 0;
    std::string alphabet;
    bool have_header = false;
    std::vector<std::string> labels;
    std::optional<std::vector<double>> initial;
    ProbMatrix trans, emit;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto words = split_words(raw);
        if (words.empty()) continue;
        const std::string& key = words[0];
        if (!have_header) {
            if (key != "hmm" || words.size() != 3 || words[1].rfind("m=", 0) != 0 ||
                words[2].rfind("alphabet=", 0) != 0) {
                throw ParseError("expected header 'hmm m=<int> alphabet=<symbols>'", line_no);
            }
            m = parse_count(words[1].substr(2), line_no);
            alphabet = words[2].substr(9);
            if (alphabet.empty()) throw ParseError("empty alphabet", line_no);
            have_header = true;
        } else if (key == "labels") {
            if (!labels.empty()) throw ParseError("duplicate 'labels' line", line_no);
            if (words.size() - 1 != m) throw ParseError("'labels' expects " + std::to_string(m) + " names", line_no);
            labels.assign(words.begin() + 1, words.end());
        } else if (key == "initial") {
            if (initial) throw ParseError("duplicate 'initial' line", line_no);
            initial = parse_row(words, m, line_no);
        } else if (key == "trans") {
            if (trans.size() == m) throw ParseError("more than " + std::to_string(m) + " 'trans' lines", line_no);
            trans.push_back(parse_row(words, m, line_no));
        } else if (key == "emit") {
            if (emit.size() == m) throw ParseError("more than " + std::to_string(m) + " 'emit' lines", line_no);
            emit.push_back(parse_row(words, alphabet.size(), line_no));
        } else {
            throw ParseError("unknown keyword '" + key + "'", line_no);
        }
    }
    if (!have_header) throw ParseError("missing 'hmm' header");
    if (!initial) throw ParseError("missing 'initial' line");
    if (trans.size() != m) throw ParseError("expected " + std::to_string(m) + " 'trans' lines");
    if (emit.size() != m) throw ParseError("expected " + std::to_string(m) + " 'emit' lines");
    return Hmm::build(*initial, trans, emit, alphabet, labels);
}

Hmm load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file '" + path + "'");
    return read_model(in);
}

void write_model(std::ostream& out, const Hmm& hmm) {
    const std::size_t m = hmm.states();
    out << "hmm m=" << m << " alphabet=" << hmm.alphabet() << '\n';
    if (!hmm.labels().empty()) {
        out << "labels";
        for (const auto& l : hmm.labels()) out << ' ' << l;
        out << '\n';
    }
    out << "initial";
    for (double p : hmm.initial_probs()) out << ' ' << format_double(p);
    out << '\n';
    for (std::size_t k = 0; k < m; ++k) {
        out << "trans";
        for (double p : hmm.transition_probs(k)) out << ' ' << format_double(p);
        out << '\n';
    }
    for (std::size_t j = 0; j < m; ++j) {
        out << "emit";
        for (double p : hmm.emission_probs(j)) out << ' ' << format_double(p);
        out << '\n';
    }
}

std::optional<Symbol> SymbolReader::next() {
    for (int c; (c = in_.get()) != std::char_traits<char>::eof();) {
        if (c == '\n') {
            ++line_;
            at_line_start_ = true;
            continue;
        }
        if (at_line_start_ && c == '>') {
            for (int d; (d = in_.get()) != std::char_traits<char>::eof() && d != '\n';) {
            }
            ++line_;
            continue;
        }
        at_line_start_ = false;
        if (std::isspace(c)) continue;
        ++position_;
        if (auto code = hmm_.symbol_code(static_cast<char>(c))) return code;
        throw ParseError("symbol '" + std::string(1, static_cast<char>(c)) + "' at position " +
                             std::to_string(position_) + " is not in the model alphabet",
                         line_);
    }
    return std::nullopt;
}

SymbolSeq read_sequence(std::istream& in, const Hmm& hmm) {
    SymbolReader reader(in, hmm);
    SymbolSeq seq;
    while (auto s = reader.next()) seq.push_back(*s);
    if (seq.empty()) throw ParseError("sequence contains no symbols");
    return seq;
}

void write_sequence(std::ostream& out, std::span<const Symbol> seq, std::string_view alphabet,
                    std::string_view header) {
    if (!header.empty()) out << '>' << header << '\n';
    constexpr std::size_t kWidth = 80;
    std::string line;
    line.reserve(kWidth);
    for (Symbol s : seq) {
        if (s >= alphabet.size()) throw InvalidArgument("symbol outside alphabet");
        line.push_back(alphabet[s]);
        if (line.size() == kWidth) {
            out << line << '\n';
            line.clear();
        }
    }
    if (!line.empty()) out << line << '\n';
}

void write_path(std::ostream& out, std::span<const StateId> path, const Hmm* labels_from) {
    const bool named = labels_from && !labels_from->labels().empty();
    for (StateId s : path) {
        if (named) {
            out << labels_from->labels()[s] << '\n';
        } else {
            out << s << '\n';
        }
    }
}

StatePath read_path(std::istream& in) {
    StatePath path;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (raw.empty() || raw[0] == '#') continue;
        const auto words = split_words(raw);
        if (words.empty()) continue;
        if (words.size() != 1) throw ParseError("expected one state per line", line_no);
        unsigned v = 0;
        const auto [ptr, ec] = std::from_chars(words[0].data(), words[0].data() + words[0].size(), v);
        if (ec != std::errc() || ptr != words[0].data() + words[0].size() || v > kMaxStates) {
            throw ParseError("invalid state index '" + words[0] + "'", line_no);
        }
        path.push_back(static_cast<StateId>(v));
    }
    return path;
}

}  // namespace olvit
