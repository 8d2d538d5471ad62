#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "tsad/report.hpp"

namespace {

std::string binary() {
    const char* bin = std::getenv("TSAD_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

int run(const std::string& args) {
    const std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), {}};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/tsad_cli_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("cli synth: deterministic output, rate validation") {
    TempFile a("a.csv"), b("b.csv");
    const std::string flags =
        "synth --n 1000 --regimes 500:0:1,500:50:1 --rate 0.01 --seed 7 ";
    CHECK(run(flags + "--output " + a.path) == 0);
    CHECK(run(flags + "--output " + b.path) == 0);
    const std::string ca = slurp(a.path);
    CHECK(ca == slurp(b.path));
    CHECK(ca.rfind("timestamp,value,label\n", 0) == 0);

    CHECK(run("synth --n 100 --regimes 100:0:1 --rate 1.0 --output /tmp/x.csv") ==
          2);
    CHECK(run("synth --n 100 --regimes nonsense --output /tmp/x.csv") == 2);
}

TEST_CASE("cli detect: happy path and validation errors") {
    TempFile csv("detect.csv"), report("detect.json");
    REQUIRE(run("synth --n 2000 --regimes 1000:0:1,1000:30:1 --rate 0.02 "
                "--seed 3 --output " + csv.path) == 0);

    CHECK(run("detect --input " + csv.path + " --method macs --confidence 0.99 "
              "--output " + report.path) == 0);
    const auto rep = tsad::read_report(report.path);
    CHECK(rep.methods.count("macs") == 1);
    CHECK(rep.methods.at("macs").confusion.has_value());
    CHECK(rep.config.at("seed") == "0");

    CHECK(run("detect --input " + csv.path +
              " --method scs-apca --confidence 1.5") == 2);
    CHECK(run("detect --input " + csv.path + " --method nonsense") == 2);
    CHECK(run("detect --input /nonexistent.csv --method macs") == 2);
}

TEST_CASE("cli detect: filter state echoed in the report") {
    TempFile csv("filter.csv"), report("filter.json");
    REQUIRE(run("synth --n 1500 --regimes 1500:0:1 --rate 0.01 --seed 1 "
                "--output " + csv.path) == 0);
    CHECK(run("detect --input " + csv.path + " --method scs-apca "
              "--filter-percentile off --output " + report.path) == 0);
    CHECK(tsad::read_report(report.path).config.at("filter_percentile") == "off");

    CHECK(run("detect --input " + csv.path + " --method scs-apca "
              "--filter-percentile 0.95 --output " + report.path) == 0);
    CHECK(tsad::read_report(report.path).config.at("filter_percentile") ==
          "0.95");
}

TEST_CASE("cli compare: grid run with deltas; labels required") {
    TempFile csv("cmp.csv"), report("cmp.json");
    REQUIRE(run("synth --n 3000 --regimes 1500:0:1,1500:20:1 --rate 0.02 "
                "--seed 11 --output " + csv.path) == 0);
    CHECK(run("compare --input " + csv.path + " --confidence 0.99,0.95 "
              "--output " + report.path) == 0);
    const auto rep = tsad::read_report(report.path);
    // Baseline plus 3 methods x 2 confidence levels.
    CHECK(rep.methods.size() == 7);
    REQUIRE(rep.deltas.has_value());
    CHECK(rep.deltas->size() == 6);
    CHECK(rep.deltas->count("scs-apca@0.99") == 1);
    CHECK(rep.deltas->count("macs@0.95") == 1);

    // Unlabeled input cannot produce deltas.
    TempFile plain("plain.csv");
    {
        std::ofstream out(plain.path);
        out << "timestamp,value\n";
        for (int i = 0; i < 500; ++i) out << "t" << i << "," << i % 13 << "\n";
    }
    CHECK(run("compare --input " + plain.path) == 2);
}

TEST_CASE("cli compare: baseline-only gives all-zero deltas") {
    TempFile csv("base.csv"), report("base.json");
    REQUIRE(run("synth --n 1200 --regimes 1200:5:1 --rate 0.01 --seed 2 "
                "--output " + csv.path) == 0);
    CHECK(run("compare --input " + csv.path + " --methods baseline "
              "--confidence 0.99 --output " + report.path) == 0);
    const auto rep = tsad::read_report(report.path);
    REQUIRE(rep.deltas.has_value());
    REQUIRE(rep.deltas->count("baseline") == 1);
    CHECK(rep.deltas->at("baseline").d_f1 == 0);
}

TEST_CASE("cli plotdata: exact column contract") {
    TempFile csv("plot.csv"), out("plot_out.csv");
    REQUIRE(run("synth --n 1200 --regimes 1200:0:1 --rate 0.01 --seed 9 "
                "--output " + csv.path) == 0);
    CHECK(run("plotdata --input " + csv.path + " --method macs --output " +
              out.path) == 0);
    const std::string text = slurp(out.path);
    CHECK(text.rfind("index,score,lower,upper,flag\n", 0) == 0);

    // SCS bands are piecewise constant per segment.
    CHECK(run("plotdata --input " + csv.path + " --method scs-apca --output " +
              out.path) == 0);
    CHECK(slurp(out.path).rfind("index,score,lower,upper,flag\n", 0) == 0);
}
