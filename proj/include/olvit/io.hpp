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

// Text formats.
//
// Model file (line oriented, '#' starts a comment, probabilities linear):
//
//     hmm m=2 alphabet=01
//     labels A B            (optional)
//     initial 0.5 0.5
//     trans 0.9 0.1         (m lines, row = source state)
//     trans 0.1 0.9
//     emit 0.8 0.2          (m lines, one column per alphabet symbol)
//     emit 0.2 0.8
//
// Sequence file: symbol characters; whitespace ignored; lines starting with
// '>' are headers and skipped.
//
// Path file: one state per line (index, or label when requested); lines
// starting with '#' are comments.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "olvit/hmm.hpp"

namespace olvit {

/// Parses a model file. Throws ParseError (syntax) or ModelError (tables).
Hmm read_model(std::istream& in);
Hmm load_model(const std::string& path);

/// Writes a model in the format read_model accepts; round-trips exactly.
void write_model(std::ostream& out, const Hmm& hmm);

/// Pulls symbols one at a time from a character stream.
class SymbolReader {
public:
    SymbolReader(std::istream& in, const Hmm& hmm) : in_(in), hmm_(hmm) {}

    /// Next symbol, or nullopt at end of input. Throws ParseError for a
    /// character outside the alphabet; `position()` then names it.
    std::optional<Symbol> next();

    /// 1-based index of the last symbol returned (or rejected).
    std::size_t position() const noexcept { return position_; }

private:
    std::istream& in_;
    const Hmm& hmm_;
    std::size_t position_ = 0;
    std::size_t line_ = 1;
    bool at_line_start_ = true;
};

/// Reads a whole sequence file. Throws ParseError on unknown symbols or when
/// no symbols are present.
SymbolSeq read_sequence(std::istream& in, const Hmm& hmm);

/// Writes symbols wrapped at 80 characters, preceded by ">header" if given.
void write_sequence(std::ostream& out, std::span<const Symbol> seq, std::string_view alphabet,
                    std::string_view header = {});

/// One state per line, as an index or as the model's label.
void write_path(std::ostream& out, std::span<const StateId> path, const Hmm* labels_from = nullptr);

/// Reads a path file of integer indices.
StatePath read_path(std::istream& in);

}  // namespace olvit
