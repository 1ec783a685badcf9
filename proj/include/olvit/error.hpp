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
#include <stdexcept>
#include <string>

namespace olvit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or call violates its documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Model tables are inconsistent (dimensions, ranges, row sums).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Malformed model, sequence or path text. `line` is 1-based, 0 if unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The sequence has probability zero under the model. `position` is the
/// 1-based sequence index whose trellis column became all negative infinity.
class ImpossibleSequence : public Error {
public:
    explicit ImpossibleSequence(std::size_t position, const std::string& context = {})
        : Error("sequence impossible under model at position " + std::to_string(position) +
                (context.empty() ? std::string() : " (" + context + ")")),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace olvit
