// End-to-end checks of the command-line tool: spawns the binary named by the
// SIGTOOL environment variable and inspects stdout bytes and exit codes.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "pathsig/io.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

std::string tool() {
    const char* env = std::getenv("SIGTOOL");
    REQUIRE_MESSAGE(env != nullptr, "SIGTOOL must point at the command-line binary");
    return env;
}

RunResult run(const std::string& args) {
    const std::string cmd = tool() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::filesystem::path& work_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("sigtool-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    const auto p = work_dir() / name;
    std::ofstream(p) << content;
    return p.string();
}

}  // namespace

TEST_CASE("signature of a two-piece corner path") {
    const auto path = write_file("corner.json", R"({"dim":2,"pieces":[["1","0"],["0","1"]]})");
    const auto r = run("sig --path " + path + " --level 2");
    CHECK(r.code == 0);
    CHECK(r.out ==
          R"({"dim":2,"level":2,"coeffs":{"":"1","1":"1","2":"1","1,1":"1/2","1,2":"1","2,2":"1/2"}})"
          "\n");
}

TEST_CASE("signature of the empty path is the unit series") {
    const auto path = write_file("empty.json", R"({"dim":2,"pieces":[]})");
    const auto r = run("sig --path " + path + " --level 5");
    CHECK(r.code == 0);
    CHECK(r.out == R"({"dim":2,"level":5,"coeffs":{"":"1"}})" "\n");
}

TEST_CASE("log-signature in Lyndon coordinates") {
    const auto path = write_file("corner.json", R"({"dim":2,"pieces":[["1","0"],["0","1"]]})");
    const auto r = run("logsig --path " + path + " --level 2 --basis lyndon");
    CHECK(r.code == 0);
    CHECK(r.out == R"({"dim":2,"level":2,"coeffs":{"1":"1","2":"1","1,2":"1/2"}})" "\n");
}

TEST_CASE("log-signature in tensor coordinates") {
    const auto path = write_file("corner.json", R"({"dim":2,"pieces":[["1","0"],["0","1"]]})");
    const auto r = run("logsig --path " + path + " --level 2 --basis tensor");
    CHECK(r.code == 0);
    CHECK(r.out ==
          R"({"dim":2,"level":2,"coeffs":{"1":"1","2":"1","1,2":"1/2","2,1":"-1/2"}})" "\n");
}

TEST_CASE("bch of two letters in Lyndon coordinates") {
    const auto a = write_file("e1.json", R"({"dim":2,"level":3,"coeffs":{"1":"1"}})");
    const auto b = write_file("e2.json", R"({"dim":2,"level":3,"coeffs":{"2":"1"}})");
    const auto r = run("bch --a " + a + " --b " + b + " --level 3");
    CHECK(r.code == 0);
    CHECK(r.out ==
          R"({"dim":2,"level":3,"coeffs":{"1":"1","2":"1","1,2":"1/2","1,1,2":"1/12","1,2,2":"1/12"}})"
          "\n");
}

TEST_CASE("bch rejects non-Lie input with the malformed-input code") {
    const auto a = write_file("sq.json", R"({"dim":2,"level":3,"coeffs":{"1,1":"1"}})");
    const auto b = write_file("e2.json", R"({"dim":2,"level":3,"coeffs":{"2":"1"}})");
    const auto r = run("bch --a " + a + " --b " + b + " --level 3");
    CHECK(r.code == 2);
}

TEST_CASE("reduce merges and cancels") {
    const auto path = write_file(
        "messy.json",
        R"({"dim":2,"pieces":[["1","2"],["2","4"],["0","0"],["-1","-2"],["5","1"]]})");
    const auto r = run("reduce --path " + path);
    CHECK(r.code == 0);
    CHECK(r.out == R"({"dim":2,"pieces":[["2","4"],["5","1"]]})" "\n");
}

TEST_CASE("vanish-search report is byte-stable") {
    const auto r = run("vanish-search --n1 2 --pieces 3 --dim 2 --max-level 3 --trials 20 --seed 7");
    CHECK(r.code == 0);
    CHECK(r.out ==
          R"({"n1":2,"K":3,"zero_levels":[2],"nonzero_levels":[3],)"
          R"("path":{"dim":2,"pieces":[["1","1"],["1","-1"],["1/8","1"]]},"seed":7})" "\n");
}

TEST_CASE("lp-profile reports values and both length gauges") {
    const auto path = write_file("axis.json", R"({"dim":2,"pieces":[["3","0"]]})");
    const auto r = run("lp-profile --path " + path + " --p 1 --level 4");
    CHECK(r.code == 0);
    const auto j = pathsig::Json::parse(r.out);
    REQUIRE(j["values"].size() == 4);
    for (const auto& v : j["values"]) CHECK(v.get<double>() == doctest::Approx(3.0));
    CHECK(j["p"].get<double>() == 1.0);
    CHECK(j["path_length"].get<double>() == doctest::Approx(3.0));
    CHECK(j["variation_l1"].get<std::string>() == "3");
}

TEST_CASE("moment transform of the standard planar Gaussian") {
    const auto g = write_file("gauss.json", R"({"mean":["0","0"],"cov":[["1","0"],["0","1"]]})");
    const auto r = run("moments --gaussian " + g + " --level 2");
    CHECK(r.code == 0);
    CHECK(r.out == R"({"dim":2,"level":2,"coeffs":{"":"1","1,1":"1/2","2,2":"1/2"}})" "\n");
}

TEST_CASE("numeric oracle approximates the exact signature") {
    const auto sp = write_file("samples.json", R"({"dim":2,"samples":[[0.0,0.0],[1.0,1.0]]})");
    const auto r = run("oracle --path " + sp + " --level 2 --steps 2000");
    CHECK(r.code == 0);
    const auto j = pathsig::Json::parse(r.out);
    const double c11 = std::stod(j["coeffs"]["1,1"].get<std::string>());
    CHECK(c11 == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("output bytes are deterministic across runs") {
    const auto path = write_file("corner.json", R"({"dim":2,"pieces":[["1","0"],["0","1"]]})");
    const auto r1 = run("sig --path " + path + " --level 4");
    const auto r2 = run("sig --path " + path + " --level 4");
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
}

TEST_CASE("float backend prints decimal coefficients") {
    const auto path = write_file("corner.json", R"({"dim":2,"pieces":[["1","0"],["0","1"]]})");
    const auto r = run("sig --path " + path + " --level 2 --backend float");
    CHECK(r.code == 0);
    const auto j = pathsig::Json::parse(r.out);
    CHECK(j["coeffs"]["1,1"].get<std::string>() == "0.5");
}

TEST_CASE("pretty format renders one coefficient per line") {
    const auto path = write_file("corner.json", R"({"dim":2,"pieces":[["1","0"],["0","1"]]})");
    const auto r = run("logsig --path " + path + " --level 2 --format pretty");
    CHECK(r.code == 0);
    CHECK(r.out.find("[1,2] = 1/2") != std::string::npos);
}

TEST_CASE("malformed input exits with code 2") {
    CHECK(run("sig --path /nonexistent.json --level 2").code == 2);
    const auto bad = write_file("bad.json", "{not json");
    CHECK(run("sig --path " + bad + " --level 2").code == 2);
    const auto ragged = write_file("ragged.json", R"({"dim":2,"pieces":[["1"]]})");
    CHECK(run("sig --path " + ragged + " --level 2").code == 2);
    const auto decimal = write_file("decimal.json", R"({"dim":2,"pieces":[["1.5","0"]]})");
    CHECK(run("sig --path " + decimal + " --level 2").code == 2);
}

TEST_CASE("unknown flags and subcommands exit with code 2") {
    const auto path = write_file("corner.json", R"({"dim":2,"pieces":[["1","0"],["0","1"]]})");
    CHECK(run("sig --path " + path + " --frobnicate").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("sig").code == 2);  // --path is required
    CHECK(run("").code == 2);     // a subcommand is required
    CHECK(run("sig --path " + path + " --backend decimal").code == 2);
}

TEST_CASE("lp-profile needs exactly one input source") {
    const auto path = write_file("axis.json", R"({"dim":2,"pieces":[["3","0"]]})");
    const auto tensor = write_file("unit.json", R"({"dim":2,"level":2,"coeffs":{"":"1"}})");
    CHECK(run("lp-profile --p 1 --level 2").code == 2);
    CHECK(run("lp-profile --path " + path + " --tensor " + tensor + " --level 2").code == 2);
}

TEST_CASE("help is available and exits cleanly") {
    const auto r = run("--help");
    CHECK(r.code == 0);
    CHECK(r.out.find("sig") != std::string::npos);
}
