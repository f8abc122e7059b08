#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "quantinv/report.hpp"

using namespace quantinv;

namespace {

std::string binary_path() {
    const char* env = std::getenv("QUANTINV_BIN");
    REQUIRE(env != nullptr);
    return env;
}

int run_cli(const std::string& args, std::string* out) {
    const std::string cmd = binary_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string text;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
    const int status = pclose(pipe);
    if (out) *out = text;
    return WEXITSTATUS(status);
}

std::string write_system_file(const std::string& name, const std::string& body) {
    const std::string path = "cli_" + name + ".json";
    std::ofstream f(path);
    f << body;
    return path;
}

}  // namespace

TEST_CASE("analyze exit codes follow the verdict contract") {
    const auto uli = write_system_file(
        "uli", R"({"a":{"kind":"rational","value":"3/2"},"b":"1","c":"1","delta":"1","inputs":["0","3"]})");
    std::string out;
    CHECK(run_cli("analyze " + uli, &out) == 0);
    CHECK(Json::parse(out).at("uli").at("status") == "ULI_ONE_STEP");

    const auto notuli = write_system_file(
        "notuli", R"({"a":{"kind":"rational","value":"3"},"inputs":["0","1"]})");
    CHECK(run_cli("analyze " + notuli, &out) == 0);
    CHECK(Json::parse(out).at("uli").at("status") == "NOT_ULI");

    const auto gap = write_system_file(
        "gap", R"({"a":{"kind":"rational","value":"1"},"inputs":["0","1"]})");
    CHECK(run_cli("analyze " + gap, &out) == 2);
    CHECK(Json::parse(out).at("uli").at("status") == "UNDECIDED_GAP");

    const auto contractive = write_system_file(
        "contractive", R"({"a":{"kind":"rational","value":"1/2"},"inputs":["0","1"]})");
    CHECK(run_cli("analyze " + contractive, &out) == 3);
}

TEST_CASE("reports are byte-identical across repeated runs") {
    const auto file = write_system_file(
        "repeat", R"({"a":{"kind":"rational","value":"10/9"},"inputs":["0","1/2"]})");
    std::string out1, out2;
    CHECK(run_cli("analyze " + file + " --crosscheck", &out1) == 0);
    CHECK(run_cli("analyze " + file + " --crosscheck", &out2) == 0);
    CHECK(out1 == out2);
    CHECK(!out1.empty());
}

TEST_CASE("analysis report round-trips losslessly") {
    const auto sys = make_quantized_system(Rational(10, 9), Rational(1), Rational(1), Rational(1),
                                           {Rational(0), Rational(1, 2)});
    RunAnalysisOptions opts;
    opts.crosscheck = true;
    const AnalysisReport rep = run_analysis(sys, opts);
    const Json j = to_json(rep);
    const AnalysisReport parsed = analysis_report_from_json(j);
    CHECK(to_json(parsed) == j);

    // Same through the wire: dump, parse, re-serialize.
    const Json reparsed = Json::parse(dump_report(j));
    CHECK(to_json(analysis_report_from_json(reparsed)) == j);
}

TEST_CASE("algebraic dynamics parse from the system file schema") {
    const auto file = write_system_file(
        "algebraic",
        R"({"a":{"kind":"algebraic","min_poly":[-1,-1,1],"isolating":["1","2"]},"inputs":["0","3"]})");
    std::string out;
    CHECK(run_cli("analyze " + file, &out) == 0);
    const Json j = Json::parse(out);
    CHECK(j.at("system").at("a").at("kind") == "algebraic");
    CHECK(j.at("uli").at("status") == "ULI_ONE_STEP");  // min|v| = 3 >= phi+1
}

TEST_CASE("repro-example emits the q-list and the LHS value table") {
    std::string out;
    CHECK(run_cli("repro-example --tau 1/2 --qmax 10", &out) == 0);
    const Json j = Json::parse(out);
    CHECK(j.at("q_list") == Json::array({1, 3, 4, 5, 6, 7, 8, 9, 10}));
    CHECK(j.at("lhs_values") == Json::array({"1", "1/2"}));
    CHECK(j.at("tau_interpreted_as") == "rational");
}

TEST_CASE("mahler subcommand emits a rational enclosure") {
    std::string out;
    CHECK(run_cli("mahler --coeffs -1,-1,1 --tol 1/1000000000", &out) == 0);
    const Json j = Json::parse(out);
    const Rational lo = Rational::parse(j.at("lower").get<std::string>());
    const Rational hi = Rational::parse(j.at("upper").get<std::string>());
    CHECK(lo <= hi);
    CHECK(hi - lo <= Rational(1, 100000000));
    CHECK(lo > Rational(161, 100));
    CHECK(hi < Rational(162, 100));
}

TEST_CASE("orbit subcommand reproduces the margin-shrunk certificate") {
    std::string out;
    CHECK(run_cli("orbit 10/9 -1/2,0,1/2 \"(-9/10,9/10)\"", &out) == 0);
    const Json j = Json::parse(out);
    CHECK(j.at("kind") == "PERIODIC_WITNESS");
    CHECK(j.at("cycle_start") == "-9/38");
}

TEST_CASE("epsilon and probe subcommands") {
    std::string out;
    CHECK(run_cli("epsilon 3/2", &out) == 0);
    CHECK(Json::parse(out).at("best") == "1/3");

    CHECK(run_cli("probe --a 3/2 --J 2 --zeta 0.3333333,0 --grid 10000", &out) == 0);
    const Json j = Json::parse(out);
    CHECK(j.at("estimate").get<double>() <= 1.0 / 3.0 + 1e-3);
}

TEST_CASE("epsilon subcommand accepts algebraic dynamics flags") {
    std::string out;
    CHECK(run_cli("epsilon --min-poly -1,-1,1 --isolating 1,2", &out) == 0);
    const Json j = Json::parse(out);
    CHECK(j.at("best") == "1");
    CHECK(j.at("coeff_bound") == "1");
    CHECK(!j.contains("rational_bound"));
}

TEST_CASE("orbit subcommand certifies emptiness for one-step systems") {
    std::string out;
    CHECK(run_cli("orbit 2 -3,0,3 \"(-1,1)\"", &out) == 0);
    CHECK(Json::parse(out).at("kind") == "EMPTY_CERTIFIED");
}

TEST_CASE("invert subcommand recovers the word") {
    const auto file = write_system_file(
        "invert", R"({"a":{"kind":"rational","value":"1"},"inputs":["0","3"]})");
    std::string out;
    CHECK(run_cli("invert " + file + " --outputs 0,3,3", &out) == 0);
    CHECK(Json::parse(out).at("inputs") == Json::array({"3", "0"}));
}

TEST_CASE("bruteforce subcommand emits witness or certificate") {
    const auto file = write_system_file(
        "bf", R"({"a":{"kind":"rational","value":"3"},"inputs":["0","1"]})");
    std::string out;
    CHECK(run_cli("bruteforce " + file + " --depth 6", &out) == 0);
    CHECK(Json::parse(out).at("witness_found") == true);
}

TEST_CASE("usage errors exit 64") {
    CHECK(run_cli("no-such-subcommand", nullptr) == 64);
    CHECK(run_cli("analyze", nullptr) == 64);
    CHECK(run_cli("mahler --coeffs 1,2 --no-such-flag", nullptr) == 64);
    CHECK(run_cli("analyze missing_file.json", nullptr) == 64);
}

TEST_CASE("--out writes the report to a file") {
    const auto file = write_system_file(
        "outfile", R"({"a":{"kind":"rational","value":"3/2"},"inputs":["0","3"]})");
    std::string out;
    CHECK(run_cli("--out cli_report.json analyze " + file, &out) == 0);
    CHECK(out.empty());
    std::ifstream f("cli_report.json");
    REQUIRE(f.good());
    Json j;
    f >> j;
    CHECK(j.at("uli").at("status") == "ULI_ONE_STEP");
}
