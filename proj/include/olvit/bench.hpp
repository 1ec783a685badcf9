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

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "olvit/decode.hpp"
#include "olvit/seqgen.hpp"

namespace olvit {

/// One decoder run on one generated input.
struct BenchReport {
    Algorithm decoder = Algorithm::full;
    std::string model_id;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
    std::uint64_t forward_steps = 0;
    std::size_t peak_window = 0;
    double mean_window = 0.0;
    /// peak_window * states * sizeof(StateId)
    std::size_t window_bytes = 0;
    LogProb log_prob = kLogZero;
    /// Online decoder only.
    std::optional<TreeCounters> tree;
};

/// Mean over trials of the largest window seen within the first n_prefix
/// symbols.
struct CurvePoint {
    Algorithm decoder = Algorithm::online;
    std::size_t n_prefix = 0;
    double mean_max = 0.0;
    double stderr_mean = 0.0;
    std::size_t trials = 0;
};

struct BenchConfig {
    std::shared_ptr<const Hmm> model;
    std::string model_id;
    /// Input source: i.i.d. with `distribution`, or sampled from `model`.
    GenSpec::Kind input = GenSpec::Kind::iid;
    std::vector<double> distribution;
    std::size_t n = 0;
    std::vector<Algorithm> decoders{Algorithm::full, Algorithm::checkpoint, Algorithm::online};
    std::size_t trials = 1;
    /// Trial t uses seed + t.
    std::uint64_t seed = 0;
    /// 0 selects default_stride(n).
    std::size_t stride = 0;
    std::optional<std::size_t> block_len;
    /// Prefix lengths for the curve; empty selects powers of 10 up to n, and n.
    std::vector<std::size_t> prefixes;
    const kernel::Kernel* kernel = nullptr;
};

struct BenchResult {
    std::vector<BenchReport> reports;
    std::vector<CurvePoint> curve;
};

/// Powers of ten not exceeding n, followed by n itself when n is not one.
std::vector<std::size_t> default_prefixes(std::size_t n);

/// Decodes `trials` generated inputs with every configured decoder. Decode
/// failures are rethrown with the trial and seed attached.
BenchResult run_benchmark(const BenchConfig& config);

struct LogFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Sum of squared residuals.
    double residual = 0.0;
};

/// Least squares of y against ln n. Requires at least three points with
/// pairwise distinct n > 0.
LogFit fit_log_slope(const std::vector<std::pair<double, double>>& points);

/// Header: decoder,model,n,seed,wall_seconds,forward_steps,peak_window,
/// mean_window,window_bytes,log_prob,tree_created,tree_deleted,tree_relinks.
/// With include_timing false the wall_seconds column is left empty, making
/// output reproducible byte for byte.
void write_reports_csv(std::ostream& out, const std::vector<BenchReport>& reports, bool include_timing = true);

/// Header: decoder,n_prefix,mean_max,stderr,trials.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);

}  // namespace olvit
