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

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "olvit/bench.hpp"
#include "olvit/decode.hpp"
#include "olvit/error.hpp"
#include "olvit/io.hpp"
#include "olvit/kernel.hpp"
#include "olvit/online.hpp"
#include "olvit/randwalk.hpp"
#include "olvit/seqgen.hpp"

namespace olvit::cli {

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Output target: a file when a path other than "-" is given, else `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ParseError("cannot open '" + path + "' for writing");
            stream_ = file_.get();
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

std::vector<double> parse_distribution(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument("invalid probability '" + item + "' in distribution");
        }
    }
    if (out.empty()) throw InvalidArgument("empty distribution");
    return out;
}

std::uint64_t as_count(double v, const char* flag) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e15) {
        throw InvalidArgument(std::string(flag) + " must be a positive integer, got " + fmt_g(v));
    }
    return static_cast<std::uint64_t>(v);
}

// ---------------------------------------------------------------- decode

struct DecodeArgs {
    std::string model;
    std::string sequence;
    std::string algorithm = "full";
    std::optional<std::size_t> block_len;
    std::string out;
    std::string metrics;
    bool labels = false;
};

int cmd_decode(const DecodeArgs& a, std::ostream& out, std::ostream& err) {
    const auto alg = parse_algorithm(a.algorithm);
    if (!alg) throw InvalidArgument("unknown algorithm '" + a.algorithm + "'");
    if (a.block_len && *a.block_len == 0) throw InvalidArgument("--block-len must be >= 1");
    const Hmm hmm = load_model(a.model);
    std::ifstream seq_in(a.sequence);
    if (!seq_in) throw ParseError("cannot open sequence file '" + a.sequence + "'");
    const SymbolSeq seq = read_sequence(seq_in, hmm);

    DecodeOptions opts;
    TreeCounters counters;
    const auto start = std::chrono::steady_clock::now();
    const DecodeResult res = decode(hmm, seq, *alg, a.block_len, opts, &counters);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Sink path_sink(a.out, out);
    write_path(path_sink.get(), res.path, a.labels ? &hmm : nullptr);

    std::string metrics_path = a.metrics;
    if (metrics_path.empty() && !a.out.empty() && a.out != "-") metrics_path = a.out + ".metrics.csv";
    Sink metrics_sink(metrics_path, err);
    auto& m = metrics_sink.get();
    m << "# olvit decode model=" << a.model << " sequence=" << a.sequence << " algorithm=" << a.algorithm
      << " block_len=" << (a.block_len ? std::to_string(*a.block_len) : std::string("default"))
      << " kernel=" << opts.resolved_kernel().name << '\n';
    m << "algorithm,n,states,log_prob,forward_steps,peak_window,mean_window,window_bytes,wall_seconds,"
         "tree_created,tree_deleted,tree_relinks\n";
    m << a.algorithm << ',' << seq.size() << ',' << hmm.states() << ',' << fmt_g(res.log_prob) << ','
      << res.forward_steps << ',' << res.trace.peak() << ',' << fmt_g(res.trace.mean()) << ','
      << res.trace.peak() * hmm.states() * sizeof(StateId) << ',' << fmt_g(wall) << ',';
    if (*alg == Algorithm::online) {
        m << counters.created << ',' << counters.deleted << ',' << counters.relink_steps;
    } else {
        m << ",,";
    }
    m << '\n';
    return kOk;
}

// ---------------------------------------------------------------- stream

struct StreamArgs {
    std::string model;
    bool labels = false;
};

void print_states(std::ostream& out, std::span<const StateId> states, const Hmm& hmm, bool labels) {
    if (states.empty()) return;
    write_path(out, states, labels ? &hmm : nullptr);
    out.flush();
}

int cmd_stream(const StreamArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
    const Hmm hmm = load_model(a.model);
    SymbolReader reader(in, hmm);
    std::optional<StreamDecoder> dec;
    try {
        while (auto sym = reader.next()) {
            if (!dec) {
                dec.emplace(hmm, *sym);
            } else {
                print_states(out, dec->feed(*sym), hmm, a.labels);
            }
        }
    } catch (const ParseError& e) {
        err << "olvit stream: " << e.what() << '\n';
        return kInfeasible;
    } catch (const ImpossibleSequence& e) {
        err << "olvit stream: " << e.what() << '\n';
        return kInfeasible;
    }
    if (!dec) throw ParseError("no symbols on standard input");
    print_states(out, dec->finish(), hmm, a.labels);
    return kOk;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    std::optional<std::uint64_t> seed;
    double n = 0;
    std::string kind = "iid";
    std::string model;
    std::string dist;
    std::string alphabet;
    std::string out;
    std::string path_out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
    if (!a.seed) throw InvalidArgument("--seed is required");
    const std::size_t n = as_count(a.n, "--n");
    std::shared_ptr<const Hmm> model;
    if (!a.model.empty()) model = std::make_shared<const Hmm>(load_model(a.model));

    GenSpec spec;
    std::string alphabet;
    if (a.kind == "hmm") {
        if (!model) throw InvalidArgument("--kind hmm requires --model");
        spec = GenSpec::from_hmm(model, n, *a.seed);
        alphabet = model->alphabet();
    } else if (a.kind == "iid") {
        std::vector<double> dist;
        if (!a.dist.empty()) {
            dist = parse_distribution(a.dist);
        } else if (model) {
            dist.assign(model->alphabet_size(), 1.0 / static_cast<double>(model->alphabet_size()));
        } else {
            dist.assign(std::begin(kDefaultDnaDistribution), std::end(kDefaultDnaDistribution));
        }
        if (model) {
            alphabet = model->alphabet();
        } else if (!a.alphabet.empty()) {
            alphabet = a.alphabet;
        } else {
            alphabet = a.dist.empty() ? std::string("ACGT") : default_alphabet(dist.size());
        }
        if (alphabet.size() != dist.size()) {
            throw InvalidArgument("alphabet has " + std::to_string(alphabet.size()) + " symbols but distribution has " +
                                  std::to_string(dist.size()));
        }
        spec = GenSpec::iid(dist, n, *a.seed);
    } else {
        throw InvalidArgument("unknown --kind '" + a.kind + "'");
    }

    const auto [seq, path] = generate(spec);
    std::ostringstream header;
    header << "olvit gen kind=" << a.kind << " n=" << n << " seed=" << *a.seed << " generator=" << kGeneratorVersion;
    if (!a.model.empty()) header << " model=" << a.model;
    if (a.kind == "iid") {
        header << " dist=";
        for (std::size_t i = 0; i < spec.distribution.size(); ++i) {
            header << (i ? "," : "") << fmt_g(spec.distribution[i]);
        }
    }
    Sink seq_sink(a.out, out);
    write_sequence(seq_sink.get(), seq, alphabet, header.str());
    if (!a.path_out.empty()) {
        if (path.empty()) throw InvalidArgument("--path-out needs --kind hmm");
        Sink path_sink(a.path_out, out);
        path_sink.get() << "# " << header.str() << '\n';
        write_path(path_sink.get(), path);
    }
    return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    std::string model;
    std::optional<std::uint64_t> seed;
    std::size_t trials = 1;
    double n = 0;
    std::string algorithms = "full,checkpoint,online";
    std::string input = "iid";
    std::string dist;
    std::optional<std::size_t> block_len;
    std::size_t stride = 0;
    std::string out;
    std::string curve;
    bool no_timing = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    if (!a.seed) throw InvalidArgument("--seed is required");
    if (a.trials == 0) throw InvalidArgument("--trials must be >= 1");
    if (a.block_len && *a.block_len == 0) throw InvalidArgument("--block-len must be >= 1");
    BenchConfig cfg;
    cfg.model = std::make_shared<const Hmm>(load_model(a.model));
    cfg.model_id = a.model;
    cfg.n = as_count(a.n, "--n");
    cfg.trials = a.trials;
    cfg.seed = *a.seed;
    cfg.stride = a.stride;
    cfg.block_len = a.block_len;
    cfg.decoders.clear();
    std::stringstream ss(a.algorithms);
    for (std::string name; std::getline(ss, name, ',');) {
        const auto alg = parse_algorithm(name);
        if (!alg) throw InvalidArgument("unknown algorithm '" + name + "'");
        cfg.decoders.push_back(*alg);
    }
    if (a.input == "hmm") {
        cfg.input = GenSpec::Kind::hmm;
    } else if (a.input == "iid") {
        cfg.input = GenSpec::Kind::iid;
        cfg.distribution = a.dist.empty() ? std::vector<double>(cfg.model->alphabet_size(),
                                                                1.0 / static_cast<double>(cfg.model->alphabet_size()))
                                          : parse_distribution(a.dist);
    } else {
        throw InvalidArgument("unknown --input '" + a.input + "'");
    }

    const BenchResult res = run_benchmark(cfg);
    std::ostringstream header;
    header << "# olvit bench model=" << a.model << " n=" << cfg.n << " trials=" << cfg.trials << " seed=" << cfg.seed
           << " input=" << a.input << " algorithms=" << a.algorithms
           << " block_len=" << (a.block_len ? std::to_string(*a.block_len) : std::string("default"))
           << " stride=" << (a.stride ? std::to_string(a.stride) : std::string("default"))
           << " generator=" << kGeneratorVersion << " kernel=" << kernel::active().name << '\n';
    Sink report_sink(a.out, out);
    report_sink.get() << header.str();
    write_reports_csv(report_sink.get(), res.reports, !a.no_timing);
    if (!a.curve.empty()) {
        Sink curve_sink(a.curve, out);
        curve_sink.get() << header.str();
        write_curve_csv(curve_sink.get(), res.curve);
    }
    return kOk;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::optional<int> K;
    std::optional<double> t;
    std::optional<double> e;
    double n = 1e6;
    double steps = 1e6;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
    int K = 0;
    if (a.K) {
        K = *a.K;
    } else if (a.t && a.e) {
        K = randwalk::k_parameter(*a.t, *a.e);
    } else {
        throw InvalidArgument("give --K, or both --t and --e");
    }
    if (K < 2) throw InvalidArgument("--K must be >= 2");
    if (a.trials == 0) throw InvalidArgument("--trials must be >= 1");
    const std::uint64_t n = as_count(a.n, "--n");
    if (n < 2) throw InvalidArgument("--n must be >= 2");
    const std::uint64_t steps = as_count(a.steps, "--steps");

    const auto dist = randwalk::simulate_runs(K, steps, a.seed);
    const auto pred = randwalk::expected_max_memory(K, static_cast<double>(n));
    double max_sum = 0.0;
    for (std::size_t t = 0; t < a.trials; ++t) {
        max_sum += static_cast<double>(randwalk::simulate_max_run(K, n, a.seed + 1 + t));
    }

    Sink sink(a.out, out);
    auto& o = sink.get();
    o << "# olvit analyze K=" << K << " n=" << n << " steps=" << steps << " trials=" << a.trials << " seed=" << a.seed
      << " rng=" << randwalk::kRngAlgorithm << " runs=" << dist.total_runs
      << " immediate_recoalescences=" << dist.immediate_recoalescences << '\n';
    o << "K,l,empirical_prob,lower_bound,upper_bound\n";
    const int max_ell = static_cast<int>(dist.histogram.size()) / 2;
    for (int ell = 0; ell <= max_ell; ++ell) {
        if (dist.bucket_count(ell) == 0) continue;
        const auto b = randwalk::run_length_prob_bounds(K, ell);
        o << K << ',' << ell << ',' << fmt_g(dist.prob_bucket(ell)) << ',' << fmt_g(b.lower) << ','
          << fmt_g(b.upper) << '\n';
    }
    o << '\n';
    o << "K,n,empirical_expected_max,predicted,exact_constant,approx_constant\n";
    o << K << ',' << n << ',' << fmt_g(max_sum / static_cast<double>(a.trials)) << ','
      << fmt_g(pred.predicted_expected_max) << ',' << fmt_g(pred.exact_constant) << ','
      << fmt_g(pred.approx_constant) << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"olvit: memory-instrumented Viterbi decoding (full, checkpoint, on-line)", "olvit"};
    app.require_subcommand(1);

    DecodeArgs dec;
    auto* decode_cmd = app.add_subcommand("decode", "Decode a sequence file");
    decode_cmd->add_option("--model", dec.model, "Model file")->required();
    decode_cmd->add_option("sequence", dec.sequence, "Sequence file")->required();
    decode_cmd->add_option("--algorithm", dec.algorithm, "full | checkpoint | online");
    decode_cmd->add_option("--block-len", dec.block_len, "Checkpoint block length (default ceil(sqrt(n)))");
    decode_cmd->add_option("--out", dec.out, "Path output file (default stdout)");
    decode_cmd->add_option("--metrics", dec.metrics, "Metrics CSV (default <out>.metrics.csv, or stderr)");
    decode_cmd->add_flag("--labels", dec.labels, "Print state labels instead of indices");

    StreamArgs str;
    auto* stream_cmd = app.add_subcommand("stream", "Decode standard input incrementally");
    stream_cmd->add_option("--model", str.model, "Model file")->required();
    stream_cmd->add_flag("--labels", str.labels, "Print state labels instead of indices");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a sequence file");
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("--n", gen.n, "Sequence length")->required();
    gen_cmd->add_option("--kind", gen.kind, "iid | hmm");
    gen_cmd->add_option("--model", gen.model, "Model file (alphabet source; required for --kind hmm)");
    gen_cmd->add_option("--dist", gen.dist, "Comma-separated symbol probabilities");
    gen_cmd->add_option("--alphabet", gen.alphabet, "Symbol characters when no model is given");
    gen_cmd->add_option("--out", gen.out, "Sequence output file (default stdout)");
    gen_cmd->add_option("--path-out", gen.path_out, "Generating state path sidecar file");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Benchmark decoders on generated inputs");
    bench_cmd->add_option("--model", bench.model, "Model file")->required();
    bench_cmd->add_option("--seed", bench.seed, "Base seed; trial t uses seed + t");
    bench_cmd->add_option("--trials", bench.trials, "Number of generated inputs");
    bench_cmd->add_option("--n", bench.n, "Input length")->required();
    bench_cmd->add_option("--algorithm", bench.algorithms, "Comma-separated decoders");
    bench_cmd->add_option("--input", bench.input, "iid | hmm");
    bench_cmd->add_option("--dist", bench.dist, "i.i.d. symbol probabilities (default uniform)");
    bench_cmd->add_option("--block-len", bench.block_len, "Checkpoint block length");
    bench_cmd->add_option("--stride", bench.stride, "Trace sampling stride");
    bench_cmd->add_option("--out", bench.out, "Per-trial report CSV (default stdout)");
    bench_cmd->add_option("--curve", bench.curve, "Prefix curve CSV");
    bench_cmd->add_flag("--no-timing", bench.no_timing, "Leave wall time empty for reproducible output");

    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "Random-walk predictions and simulation");
    analyze_cmd->add_option("--K", an.K, "Barrier parameter");
    analyze_cmd->add_option("--t", an.t, "Transition probability (with --e, instead of --K)");
    analyze_cmd->add_option("--e", an.e, "Emission probability");
    analyze_cmd->add_option("--n", an.n, "Sequence length for the maximum-memory prediction");
    analyze_cmd->add_option("--steps", an.steps, "Walk steps for the run-length histogram");
    analyze_cmd->add_option("--trials", an.trials, "Walks averaged for the empirical maximum");
    analyze_cmd->add_option("--seed", an.seed, "Random seed");
    analyze_cmd->add_option("--out", an.out, "Output CSV (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*decode_cmd) return cmd_decode(dec, out, err);
        if (*stream_cmd) return cmd_stream(str, in, out, err);
        if (*gen_cmd) return cmd_gen(gen, out);
        if (*bench_cmd) return cmd_bench(bench, out);
        if (*analyze_cmd) return cmd_analyze(an, out);
    } catch (const ImpossibleSequence& e) {
        err << "olvit: " << e.what() << '\n';
        return kInfeasible;
    } catch (const Error& e) {
        err << "olvit: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "olvit: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace olvit::cli
