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

#include <optional>
#include <span>
#include <string_view>

#include "olvit/checkpoint.hpp"
#include "olvit/online.hpp"
#include "olvit/trellis.hpp"

namespace olvit {

enum class Algorithm { full, checkpoint, online };

std::string_view algorithm_name(Algorithm a) noexcept;

/// Parses "full", "checkpoint" or "online".
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

/// Runs one decoder over a complete sequence. `block_len` applies to
/// checkpoint only; `counters` receives tree work for online only.
DecodeResult decode(const Hmm& hmm, std::span<const Symbol> seq, Algorithm algorithm,
                    std::optional<std::size_t> block_len = std::nullopt, const DecodeOptions& opts = {},
                    TreeCounters* counters = nullptr);

}  // namespace olvit
