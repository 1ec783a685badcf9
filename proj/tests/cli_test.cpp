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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "doctest.h"
#include "olvit/io.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace olvit;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args, const std::string& input = {}) {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class TempDir {
public:
    TempDir() {
        dir_ = fs::temp_directory_path() / ("olvit_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
        std::ofstream(dir_ / "casino.hmm") << [] {
            std::ostringstream ss;
            write_model(ss, testutil::casino());
            return ss.str();
        }();
        std::ofstream(dir_ / "dead.hmm") << "hmm m=2 alphabet=01\ninitial 1 0\ntrans 1 0\ntrans 0 1\nemit 1 0\nemit 0 1\n";
        std::ofstream(dir_ / "one.hmm") << "hmm m=1 alphabet=01\ninitial 1\ntrans 1\nemit 0.5 0.5\n";
    }
    ~TempDir() { fs::remove_all(dir_); }
    std::string operator/(const std::string& name) const { return (dir_ / name).string(); }

private:
    fs::path dir_;
};

}  // namespace

TEST_CASE("cli usage") {
    CHECK(invoke({}).code == cli::kUsage);
    CHECK(invoke({"--help"}).code == cli::kOk);
    CHECK(invoke({"frobnicate"}).code == cli::kUsage);
    CHECK(invoke({"decode"}).code == cli::kUsage);
}

TEST_CASE("cli gen and decode") {
    TempDir tmp;
    const Run g = invoke({"gen", "--seed", "5", "--n", "300", "--kind", "hmm", "--model", tmp / "casino.hmm", "--out",
                       tmp / "s.seq", "--path-out", tmp / "s.path"});
    REQUIRE(g.code == cli::kOk);
    const std::string seq_text = slurp(tmp / "s.seq");
    CHECK(seq_text.rfind(">olvit gen kind=hmm n=300 seed=5", 0) == 0);
    CHECK(invoke({"gen", "--seed", "5", "--n", "300", "--kind", "hmm", "--model", tmp / "casino.hmm"}).out == seq_text);
    std::ifstream path_in(tmp / "s.path");
    CHECK(read_path(path_in).size() == 300);

    std::vector<std::string> outputs;
    for (std::string alg : {"full", "checkpoint", "online"}) {
        const Run d = invoke({"decode", "--model", tmp / "casino.hmm", tmp / "s.seq", "--algorithm", alg, "--out",
                           tmp / (alg + ".path")});
        REQUIRE(d.code == cli::kOk);
        outputs.push_back(slurp(tmp / (alg + ".path")));
        const std::string metrics = slurp(tmp / (alg + ".path.metrics.csv"));
        CHECK(metrics.find("algorithm,n,states,log_prob,forward_steps,peak_window") != std::string::npos);
        CHECK(metrics.find("\n" + alg + ",300,2,") != std::string::npos);
    }
    CHECK(outputs[0] == outputs[1]);
    CHECK(outputs[0] == outputs[2]);

    const Run labelled = invoke({"decode", "--model", tmp / "casino.hmm", tmp / "s.seq", "--labels"});
    CHECK(labelled.out.substr(0, 2).find_first_of("FL") == 0);
    CHECK(labelled.err.find("algorithm,n,states") != std::string::npos);

    CHECK(invoke({"decode", "--model", tmp / "casino.hmm", tmp / "s.seq", "--algorithm", "magic"}).code == cli::kUsage);
    CHECK(invoke({"decode", "--model", tmp / "missing.hmm", tmp / "s.seq"}).code == cli::kUsage);
    CHECK(invoke({"decode", "--model", tmp / "casino.hmm", tmp / "s.seq", "--block-len", "0"}).code == cli::kUsage);
    CHECK(invoke({"gen", "--n", "10"}).code == cli::kUsage);
    CHECK(invoke({"gen", "--seed", "1", "--n", "10", "--dist", "0.5,0.6"}).code == cli::kUsage);
}

TEST_CASE("cli infeasible input") {
    TempDir tmp;
    std::ofstream(tmp / "bad.seq") << "0010\n";
    const Run d = invoke({"decode", "--model", tmp / "dead.hmm", tmp / "bad.seq"});
    CHECK(d.code == cli::kInfeasible);
    CHECK(d.err.find("position 3") != std::string::npos);
    std::ofstream(tmp / "alien.seq") << "01z\n";
    CHECK(invoke({"decode", "--model", tmp / "dead.hmm", tmp / "alien.seq"}).code == cli::kUsage);
}

TEST_CASE("cli stream") {
    TempDir tmp;
    const Run s = invoke({"stream", "--model", tmp / "one.hmm"}, "0110\n1\n");
    CHECK(s.code == cli::kOk);
    CHECK(s.out == "0\n0\n0\n0\n0\n");
    CHECK(invoke({"stream", "--model", tmp / "one.hmm"}, "01x1").code == cli::kInfeasible);
    CHECK(invoke({"stream", "--model", tmp / "dead.hmm"}, "001").code == cli::kInfeasible);
    CHECK(invoke({"stream", "--model", tmp / "one.hmm"}, "").code == cli::kUsage);
}

TEST_CASE("cli bench and analyze") {
    TempDir tmp;
    const Run b = invoke({"bench", "--model", tmp / "casino.hmm", "--seed", "3", "--trials", "2", "--n", "1e3", "--no-timing",
                       "--curve", tmp / "curve.csv"});
    REQUIRE(b.code == cli::kOk);
    CHECK(b.out.find("# olvit bench") == 0);
    CHECK(b.out.find("online,") != std::string::npos);
    CHECK(b.out == invoke({"bench", "--model", tmp / "casino.hmm", "--seed", "3", "--trials", "2", "--n", "1000",
                        "--no-timing", "--curve", tmp / "curve2.csv"})
                       .out);
    CHECK(slurp(tmp / "curve.csv").find("decoder,n_prefix,mean_max,stderr,trials") != std::string::npos);
    CHECK(invoke({"bench", "--model", tmp / "casino.hmm", "--seed", "3", "--trials", "0", "--n", "10"}).code == cli::kUsage);
    CHECK(invoke({"bench", "--model", tmp / "casino.hmm", "--trials", "1", "--n", "10"}).code == cli::kUsage);
    CHECK(invoke({"bench", "--model", tmp / "dead.hmm", "--seed", "1", "--n", "100"}).code == cli::kInfeasible);

    const Run a = invoke({"analyze", "--K", "4", "--n", "1e4", "--steps", "1e5", "--trials", "5"});
    REQUIRE(a.code == cli::kOk);
    CHECK(a.out.find("K,l,empirical_prob,lower_bound,upper_bound\n4,0,") != std::string::npos);
    CHECK(a.out.find("K,n,empirical_expected_max,predicted,exact_constant,approx_constant\n4,10000,") !=
          std::string::npos);
    CHECK(invoke({"analyze", "--t", "0.1", "--e", "0.2", "--steps", "1000", "--trials", "1"}).out.find("K=4") !=
          std::string::npos);
    CHECK(invoke({"analyze"}).code == cli::kUsage);
    CHECK(invoke({"analyze", "--K", "1"}).code == cli::kUsage);
}
