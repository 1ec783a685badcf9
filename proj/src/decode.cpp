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

#include "olvit/decode.hpp"

namespace olvit {

std::string_view algorithm_name(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::full: return "full";
        case Algorithm::checkpoint: return "checkpoint";
        case Algorithm::online: return "online";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
    if (name == "full") return Algorithm::full;
    if (name == "checkpoint") return Algorithm::checkpoint;
    if (name == "online") return Algorithm::online;
    return std::nullopt;
}

DecodeResult decode(const Hmm& hmm, std::span<const Symbol> seq, Algorithm algorithm,
                    std::optional<std::size_t> block_len, const DecodeOptions& opts, TreeCounters* counters) {
    switch (algorithm) {
        case Algorithm::full: return viterbi_full(hmm, seq, opts);
        case Algorithm::checkpoint: return viterbi_checkpoint(hmm, seq, block_len, opts);
        case Algorithm::online: return viterbi_online(hmm, seq, opts, counters);
    }
    return viterbi_full(hmm, seq, opts);
}

}  // namespace olvit
