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

#include "olvit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "olvit/error.hpp"

namespace olvit {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct OnlineRun {
    DecodeResult result;
    TreeCounters counters;
    std::vector<std::size_t> prefix_peaks;
};

// Streams the input, noting the largest window seen within each prefix.
OnlineRun run_online(const Hmm& hmm, const SymbolSeq& seq, const DecodeOptions& opts,
                     const std::vector<std::size_t>& prefixes) {
    OnlineRun run;
    StreamDecoder dec(hmm, seq[0], opts);
    std::size_t peak = dec.window_len();
    std::size_t next_prefix = 0;
    auto note_prefix = [&] {
        while (next_prefix < prefixes.size() && prefixes[next_prefix] == dec.position()) {
            run.prefix_peaks.push_back(peak);
            ++next_prefix;
        }
    };
    note_prefix();
    StatePath path;
    path.reserve(seq.size());
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const auto out = dec.feed(seq[i]);
        path.insert(path.end(), out.begin(), out.end());
        peak = std::max(peak, dec.window_len());
        note_prefix();
    }
    const auto tail = dec.finish();
    path.insert(path.end(), tail.begin(), tail.end());
    run.counters = dec.tree_op_count();
    run.result = DecodeResult{std::move(path), dec.log_prob(), dec.trace(), dec.forward_steps()};
    return run;
}

}  // namespace

std::vector<std::size_t> default_prefixes(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t p = 10; p <= n; p *= 10) out.push_back(p);
    if (out.empty() || out.back() != n) out.push_back(n);
    return out;
}

BenchResult run_benchmark(const BenchConfig& config) {
    if (!config.model) throw InvalidArgument("benchmark needs a model");
    if (config.trials == 0) throw InvalidArgument("benchmark needs at least one trial");
    if (config.n == 0) throw InvalidArgument("benchmark needs n >= 1");
    if (config.decoders.empty()) throw InvalidArgument("benchmark needs at least one decoder");
    const Hmm& hmm = *config.model;
    if (config.input == GenSpec::Kind::iid && config.distribution.size() != hmm.alphabet_size()) {
        throw InvalidArgument("input distribution has " + std::to_string(config.distribution.size()) +
                              " symbols but the model alphabet has " + std::to_string(hmm.alphabet_size()));
    }
    std::vector<std::size_t> prefixes = config.prefixes.empty() ? default_prefixes(config.n) : config.prefixes;
    std::sort(prefixes.begin(), prefixes.end());
    prefixes.erase(std::unique(prefixes.begin(), prefixes.end()), prefixes.end());
    std::erase_if(prefixes, [&](std::size_t p) { return p == 0 || p > config.n; });

    DecodeOptions opts;
    opts.kernel = config.kernel;
    opts.trace_stride = config.stride ? config.stride : default_stride(config.n);

    BenchResult result;
    std::vector<std::vector<double>> prefix_samples(prefixes.size());
    const bool has_online =
        std::find(config.decoders.begin(), config.decoders.end(), Algorithm::online) != config.decoders.end();

    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        const std::uint64_t seed = config.seed + trial;
        const GenSpec spec = config.input == GenSpec::Kind::iid
                                 ? GenSpec::iid(config.distribution, config.n, seed)
                                 : GenSpec::from_hmm(config.model, config.n, seed);
        const SymbolSeq seq = generate(spec).first;

        for (Algorithm alg : config.decoders) {
            BenchReport rep;
            rep.decoder = alg;
            rep.model_id = config.model_id;
            rep.n = config.n;
            rep.seed = seed;
            try {
                const auto start = Clock::now();
                DecodeResult res;
                if (alg == Algorithm::online) {
                    OnlineRun run = run_online(hmm, seq, opts, prefixes);
                    rep.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
                    rep.tree = run.counters;
                    for (std::size_t k = 0; k < run.prefix_peaks.size(); ++k) {
                        prefix_samples[k].push_back(static_cast<double>(run.prefix_peaks[k]));
                    }
                    res = std::move(run.result);
                } else {
                    res = decode(hmm, seq, alg, config.block_len, opts);
                    rep.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
                }
                rep.forward_steps = res.forward_steps;
                rep.peak_window = res.trace.peak();
                rep.mean_window = res.trace.mean();
                rep.window_bytes = rep.peak_window * hmm.states() * sizeof(StateId);
                rep.log_prob = res.log_prob;
            } catch (const ImpossibleSequence& e) {
                throw ImpossibleSequence(e.position(), std::string(algorithm_name(alg)) + " decoder, trial " +
                                                           std::to_string(trial) + ", seed " + std::to_string(seed));
            }
            result.reports.push_back(std::move(rep));
        }
    }

    if (has_online) {
        for (std::size_t k = 0; k < prefixes.size(); ++k) {
            const auto& xs = prefix_samples[k];
            CurvePoint pt;
            pt.decoder = Algorithm::online;
            pt.n_prefix = prefixes[k];
            pt.trials = xs.size();
            double sum = 0.0;
            for (double x : xs) sum += x;
            pt.mean_max = sum / static_cast<double>(xs.size());
            if (xs.size() > 1) {
                double ss = 0.0;
                for (double x : xs) ss += (x - pt.mean_max) * (x - pt.mean_max);
                pt.stderr_mean = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
            }
            result.curve.push_back(pt);
        }
    }
    return result;
}

LogFit fit_log_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw InvalidArgument("log-slope fit needs at least 3 points");
    std::set<double> seen;
    for (const auto& [n, y] : points) {
        if (!(n > 0.0)) throw InvalidArgument("log-slope fit needs n > 0");
        if (!seen.insert(n).second) throw InvalidArgument("log-slope fit needs distinct n");
    }
    const double count = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [n, y] : points) {
        sx += std::log(n);
        sy += y;
    }
    const double mx = sx / count;
    const double my = sy / count;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [n, y] : points) {
        const double dx = std::log(n) - mx;
        sxx += dx * dx;
        sxy += dx * (y - my);
    }
    LogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (const auto& [n, y] : points) {
        const double r = y - (fit.slope * std::log(n) + fit.intercept);
        fit.residual += r * r;
    }
    return fit;
}

void write_reports_csv(std::ostream& out, const std::vector<BenchReport>& reports, bool include_timing) {
    out << "decoder,model,n,seed,wall_seconds,forward_steps,peak_window,mean_window,window_bytes,log_prob,"
           "tree_created,tree_deleted,tree_relinks\n";
    for (const auto& r : reports) {
        out << algorithm_name(r.decoder) << ',' << r.model_id << ',' << r.n << ',' << r.seed << ',';
        if (include_timing) out << fmt_g(r.wall_seconds);
        out << ',' << r.forward_steps << ',' << r.peak_window << ',' << fmt_g(r.mean_window) << ','
            << r.window_bytes << ',' << fmt_g(r.log_prob) << ',';
        if (r.tree) {
            out << r.tree->created << ',' << r.tree->deleted << ',' << r.tree->relink_steps;
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
    out << "decoder,n_prefix,mean_max,stderr,trials\n";
    for (const auto& p : curve) {
        out << algorithm_name(p.decoder) << ',' << p.n_prefix << ',' << fmt_g(p.mean_max) << ','
            << fmt_g(p.stderr_mean) << ',' << p.trials << '\n';
    }
}

}  // namespace olvit
