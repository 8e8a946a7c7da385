#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = interkernel::cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("interkernel_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("analyze exit codes follow the verdict") {
        const std::string m = "seq(alt(a!m1,b?m2),a!m3)";
        auto r = run({"analyze", "-m", m, "-t", "a!m3.b?m2"});
        CHECK(r.status == 0);
        CHECK(r.out == "Covered\n");
        CHECK(r.err.empty());
        CHECK(run({"analyze", "-m", m, "-t", "a!m3"}).status == 1);
        CHECK(run({"analyze", "-m", m, "-t", "a!m1.a!m3.a!m3"}).status == 2);
        CHECK(run({"analyze", "-m", m, "-t", "b?m1"}).status == 3);
        CHECK(run({"analyze", "-m", "a!m", "-t", "eps"}).status == 1);
        r = run({"analyze", "-m", m, "-t", "a!m3", "-t", "a!m3.b?m2", "--format", "tsv"});
        CHECK(r.status == 1);
        CHECK(r.out == "a!m3\tTooShort\t2\na!m3.b?m2\tCovered\t3\n");
    }

    TEST_CASE("analyze reads trace files and emits jsonl") {
        const auto path = temp_file("traces.txt", "# traces\na!m.b?m\n\neps\nb?m\n");
        const auto r = run({"analyze", "-m", "strict(a!m,b?m)", "--trace-file", path, "--format", "jsonl"});
        CHECK(r.status == 3);
        std::istringstream lines(r.out);
        std::string line;
        std::vector<nlohmann::json> rows;
        while (std::getline(lines, line)) rows.push_back(nlohmann::json::parse(line));
        REQUIRE(rows.size() == 3);
        CHECK(rows[0]["verdict"] == "Covered");
        CHECK(rows[0]["witness"].size() == 2);
        CHECK(rows[1]["trace"] == "");
        CHECK(rows[1]["verdict"] == "TooShort");
        CHECK(rows[2]["verdict"] == "Out");
        CHECK_FALSE(rows[2].contains("witness"));
        std::filesystem::remove(path);
    }

    TEST_CASE("frontier, step and prune") {
        CHECK(run({"frontier", "-m", "seq(alt(a!m1,b?m2),a!m3)"}).out == "11 12 2\n");
        CHECK(run({"frontier", "-m", "a!m"}).out == "eps\n");
        CHECK(run({"step", "-m", "seq(alt(a!m1,b?m2),a!m3)", "--position", "2"}).out == "seq(b?m2,0)\n");
        CHECK(run({"step", "-m", "a!m", "--position", "eps"}).out == "0\n");
        CHECK(run({"step", "-m", "par(a!m,b?m)"}).out == "1\ta!m\tpar(0,b?m)\n2\tb?m\tpar(a!m,0)\n");
        CHECK(run({"step", "-m", "strict(a!m,b?m)", "--position", "2"}).status == interkernel::cli::kExitInput);
        CHECK(run({"prune", "-m", "loopSeq(alt(a!m2,b?m3))", "--lifeline", "a"}).out == "loopSeq(b?m3)\tkept\n");
        CHECK(run({"prune", "-m", "alt(a!m1,a!m2)", "--lifeline", "a"}).out == "0\teliminated\n");
    }

    TEST_CASE("semantics output formats") {
        const std::string m = "loopSeq(strict(a!m,b?m))";
        CHECK(run({"semantics", "-m", m, "--bound", "1"}).out == "<eps>\na!m.b?m\n");
        CHECK(run({"semantics", "-m", m, "--bound", "1", "--format", "tsv"}).out == "\na!m.b?m\n");
        CHECK(run({"semantics", "-m", m, "--bound", "1", "--format", "jsonl"}).out ==
              "{\"trace\":\"\"}\n{\"trace\":\"a!m.b?m\"}\n");
        CHECK(run({"semantics", "-m", m, "--bound", "2", "--method", "operational"}).out ==
              "<eps>\na!m.a!m.b?m.b?m\na!m.b?m\na!m.b?m.a!m.b?m\n");
        CHECK(run({"semantics", "-m", "strict(a!m,0)", "--literal-empty"}).out.empty());
        CHECK(run({"semantics", "-m", m, "--method", "magic"}).status == interkernel::cli::kExitUsage);
        // default bound is 4
        const auto r = run({"semantics", "-m", "loopPar(a!m)"});
        CHECK(r.out == "<eps>\na!m\na!m.a!m\na!m.a!m.a!m\na!m.a!m.a!m.a!m\n");
    }

    TEST_CASE("enumerate") {
        CHECK(run({"enumerate", "--lifelines", "1", "--messages", "1", "--depth", "3", "--count-only"}).out ==
              "3 45 9315\n");
        CHECK(run({"enumerate", "--lifelines", "1", "--messages", "1", "--depth", "1"}).out == "0\na!m\na?m\n");
        CHECK(run({"enumerate", "--lifelines", "1", "--messages", "1"}).status == interkernel::cli::kExitUsage);
    }

    TEST_CASE("diff and mutate") {
        auto r = run({"diff", "--lifelines", "1", "--messages", "1", "--depth", "2", "--bound", "2"});
        CHECK(r.status == 0);
        CHECK(r.out == "checked\t48\nresource_limited\t0\nmismatches\t0\n");
        r = run({"diff", "-m", "seq(alt(a!m1,b?m2),a!m3)", "-m", "loopSeq(a!m)", "--bound", "3"});
        CHECK(r.status == 0);
        CHECK(r.out.find("checked\t2\n") == 0);

        const auto log = (std::filesystem::temp_directory_path() / "interkernel_test_mismatches.jsonl").string();
        r = run({"mutate", "--lifelines", "2", "--messages", "2", "--depth", "3", "--models", "10", "--seed", "3",
                 "--mismatches", log});
        CHECK(r.status == 0);
        CHECK(r.out.rfind("obtained\t", 0) == 0);
        CHECK(r.out.find("# models 10, skipped 0") != std::string::npos);
        CHECK(r.out.find("mismatches 0, membership checked") != std::string::npos);
        CHECK(std::filesystem::file_size(log) == 0);
        std::filesystem::remove(log);

        const auto models = temp_file("models.txt", "# two models\nseq(a!m,b?m)\n\nloopPar(a!m)\n");
        r = run({"mutate", "--model-file", models, "--samples", "2"});
        CHECK(r.status == 0);
        CHECK(r.out.find("# models 2,") != std::string::npos);
        std::filesystem::remove(models);
    }

    TEST_CASE("seed from the environment overrides the flag") {
        const std::vector<std::string> args{"diff", "--lifelines", "2", "--messages", "2", "--depth", "3",
                                            "--sample", "5", "--format", "jsonl", "--seed", "1"};
        // jsonl diff output lists only mismatches, so compare mutate tables instead
        const std::vector<std::string> mut{"mutate", "--lifelines", "2", "--messages", "2", "--depth", "3",
                                           "--models", "5", "--seed", "1"};
        const auto flag_only = run(mut);
        ::setenv("INTERKERNEL_SEED", "2", 1);
        const auto with_env = run(mut);
        ::unsetenv("INTERKERNEL_SEED");
        std::vector<std::string> mut2 = mut;
        mut2.back() = "2";
        CHECK(with_env.out == run(mut2).out);
        CHECK(with_env.out != flag_only.out);
        CHECK(run(args).status == 0);
        ::setenv("INTERKERNEL_SEED", "x", 1);
        CHECK(run(mut).status == interkernel::cli::kExitUsage);
        ::unsetenv("INTERKERNEL_SEED");
    }

    TEST_CASE("bench emits a per-prefix table") {
        const auto r = run({"bench", "--instances", "2", "--traces", "2", "--seed", "5"});
        CHECK(r.status == 0);
        std::istringstream lines(r.out);
        std::string line;
        std::getline(lines, line);
        CHECK(line == "trace\tlength\tverdict\texplored_nodes\tseconds");
        std::size_t rows = 0, covered = 0;
        while (std::getline(lines, line)) {
            ++rows;
            covered += line.find("\tCovered\t") != std::string::npos;
        }
        CHECK(covered == 2);
        CHECK(rows > 20);

        const auto traces = temp_file("bench.txt", "a!m.b?m\n");
        CHECK(run({"bench", "-m", "strict(a!m,b?m)", "--trace-file", traces}).out.find("0\t2\tCovered\t") !=
              std::string::npos);
        std::filesystem::remove(traces);
    }

    TEST_CASE("usage and input errors") {
        CHECK(run({}).status == interkernel::cli::kExitUsage);
        CHECK(run({"frobnicate"}).status == interkernel::cli::kExitUsage);
        CHECK(run({"--help"}).status == 0);
        CHECK(run({"analyze", "-m", "a!m"}).status == interkernel::cli::kExitUsage);
        CHECK(run({"parse", "-m", "seq(a!m"}).status == interkernel::cli::kExitInput);
        CHECK(run({"parse", "-m", "a!m", "--model-file", "/nonexistent"}).status == interkernel::cli::kExitUsage);
        CHECK(run({"analyze", "-m", "a!m", "-t", "c?m", "--sig", "a,b/m"}).status == interkernel::cli::kExitInput);
        CHECK(run({"analyze", "-m", "a!m", "-t", "b?m", "--sig", "a,b/m"}).status == 3);
        CHECK(run({"analyze", "-m", "a!m", "-t", "a!m", "--sig", "ab"}).status == interkernel::cli::kExitUsage);
        CHECK(run({"analyze", "-m", "a!m", "-t", "a!m", "--format", "xml"}).status == interkernel::cli::kExitUsage);
        const auto r = run({"parse", "-m", " seq( a!m , 0 ) "});
        CHECK(r.out == "seq(a!m,0)\n");
        CHECK(run({"parse", "-m", "seq(a!m"}).err.find("offset 7") != std::string::npos);
    }
}
