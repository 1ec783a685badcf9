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

#include "olvit/memory_trace.hpp"

#include <algorithm>

#include "olvit/error.hpp"

namespace olvit {

std::size_t default_stride(std::size_t n) { return std::max<std::size_t>(1, n / kDefaultTraceSamples); }

void MemoryTrace::record(std::size_t length) {
    if (length == 0) throw InvalidArgument("recorded table length must be >= 1");
    if (stride_ != 0 && count_ % stride_ == 0) samples_.push_back(length);
    ++count_;
    peak_ = std::max(peak_, length);
    sum_ += static_cast<double>(length);
}

std::size_t MemoryTrace::peak() const {
    if (empty()) throw InvalidArgument("peak of an empty trace");
    return peak_;
}

double MemoryTrace::mean() const {
    if (empty()) throw InvalidArgument("mean of an empty trace");
    return sum_ / static_cast<double>(count_);
}

}  // namespace olvit
