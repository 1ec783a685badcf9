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
#include <vector>

namespace olvit {

/// Number of samples a trace keeps by default for a run of `n` positions.
inline constexpr std::size_t kDefaultTraceSamples = 10'000;

/// Stride giving at most kDefaultTraceSamples samples for `n` records.
std::size_t default_stride(std::size_t n);

/// Retained-table lengths over the course of a decode.
///
/// Every record updates the peak and the running mean; only every
/// stride-th record is kept in `samples()`. Stride 0 keeps no samples.
class MemoryTrace {
public:
    explicit MemoryTrace(std::size_t stride = 1) : stride_(stride) {}

    /// Requires length >= 1.
    void record(std::size_t length);

    std::size_t stride() const noexcept { return stride_; }
    std::size_t count() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }
    const std::vector<std::size_t>& samples() const noexcept { return samples_; }

    /// Throw InvalidArgument on an empty trace.
    std::size_t peak() const;
    double mean() const;

private:
    std::size_t stride_;
    std::size_t count_ = 0;
    std::size_t peak_ = 0;
    double sum_ = 0.0;
    std::vector<std::size_t> samples_;
};

}  // namespace olvit
