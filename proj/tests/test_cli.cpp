#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef OSCIL_CLI_PATH
#error "OSCIL_CLI_PATH must point at the command line binary"
#endif

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(OSCIL_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json as_json(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST_CASE("analyze reports the Airy-type split") {
    RunResult r = run("analyze --b 0 --c \"-x\" --window -30:10 --unbounded left");
    REQUIRE(r.code == 0);
    auto j = as_json(r.out);
    CHECK(j["spec"]["b"] == "0");
    CHECK(j["D"] == "4*x");
    REQUIRE(j["pieces"].size() == 2);
    CHECK(j["pieces"][0]["label"] == "Oscillatory");
    CHECK(j["pieces"][0]["justification"] == "D<=-margin");
    CHECK(j["pieces"][1]["label"] == "NonOscillatory");
    CHECK(j["pieces"][1]["justification"] == "D>=0");
    REQUIRE(j["roots"].size() == 1);
    CHECK(std::fabs(j["roots"][0].get<double>()) < 1e-9);
    CHECK(j["options"]["margin"] == 1e-6);
}

TEST_CASE("analyze output is deterministic") {
    const char* cmd = "analyze --catalog bessel";
    RunResult a = run(cmd), b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
}

TEST_CASE("analyze csv has the piece table header") {
    RunResult r = run("analyze --catalog airy --format csv");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("lo,hi,sign,label,justification,witness\n", 0) == 0);
}

TEST_CASE("solve emits a trajectory csv") {
    RunResult r = run("solve --b 0 --c 1 --ic 0,0,1 --to 6.5 --format csv");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("x,y,dy\n", 0) == 0);
    CHECK(r.out.find("\n0,0,1\n") != std::string::npos);  // the initial node
}

TEST_CASE("zeros finds k pi for the harmonic oscillator") {
    RunResult r = run("zeros --b 0 --c 1 --ic 0,0,1 --to 32 --range 0.5:31.5");
    REQUIRE(r.code == 0);
    auto j = as_json(r.out);
    REQUIRE(j["count"] == 10);
    for (int k = 0; k < 10; ++k) {
        double z = j["zeros"][k]["x"].get<double>();
        CHECK(std::fabs(z - (k + 1) * M_PI) < 1e-6);
    }
}

TEST_CASE("zeros --about counts crossings of the particular solution") {
    RunResult r = run("zeros --catalog nonhomog_airy --about \"-5*x\" --to -25");
    REQUIRE(r.code == 0);
    auto j = as_json(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["zeros"]["count"].get<int>() >= 5);
}

TEST_CASE("sample tabulates both discriminants") {
    RunResult r = run("sample --catalog euler_log --window 1:10 --samples 9 --format csv");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("x,D,Q,naiveD\n", 0) == 0);
    // rows: x, D = -17/x^2, Q = 17/(4x^2), naiveD = -15/x^2
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);  // header
    REQUIRE(std::getline(lines, line));
    double x, D, Q, nD;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &D, &Q, &nD) == 4);
    CHECK(x == 1.0);
    CHECK(D == doctest::Approx(-17.0).epsilon(1e-12));
    CHECK(Q == doctest::Approx(4.25).epsilon(1e-12));
    CHECK(nD == doctest::Approx(-15.0).epsilon(1e-12));
}

TEST_CASE("verify sturm defaults pass and report gaps") {
    RunResult r = run("verify --check sturm");
    REQUIRE(r.code == 0);
    auto j = as_json(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["pass_rate"] == 1.0);
    CHECK(j["min_gap"] == 3.0);
}

TEST_CASE("verify exit code distinguishes failure from error") {
    // residual threshold nobody can meet -> pass=false -> exit 1
    RunResult fail = run(
        "verify --check wronskian --q1 \"-x\" --q2 \"-x-1\" --window -20:-2 "
        "--ic1 -20,0,1 --ic2 -20,1,0 --threshold 1e-30");
    CHECK(fail.code == 1);
    auto j = as_json(fail.out);
    CHECK(j["pass"] == false);

    // reversed hypothesis -> exit 1 as a failed verification
    RunResult rev = run("verify --check sturm --q1 1 --q2 4");
    CHECK(rev.code == 1);
}

TEST_CASE("usage problems exit 2") {
    CHECK(run("analyze --b 0 --c \"x +\" --window 0:1").code == 2);      // parse error
    CHECK(run("analyze --b 0 --c \"k*x\" --window 0:1").code == 2);      // unbound parameter
    CHECK(run("analyze --c 1 --b 0 --window 5:1").code == 2);            // bad window
    CHECK(run("analyze --catalog nope").code == 2);                      // unknown entry
    CHECK(run("analyze --b 0").code == 2);                               // missing c
    CHECK(run("analyze --catalog airy --b 0 --c 1").code == 2);          // two sources
    CHECK(run("frobnicate").code == 2);                                  // unknown command
    CHECK(run("solve --b 0 --c 1 --ic 0,0,1 --to 5 --rel-tol 1").code == 2);
    CHECK(run("").code == 2);                                            // no subcommand
}

TEST_CASE("singular path problems exit 3") {
    // integration attempts to cross the declared singular point at 0...
    // that is caught as a usage error (2); an undeclared domain edge is 3
    CHECK(run("solve --b 0 --c \"sqrt(x)\" --ic 1,1,0 --to -2").code == 3);
    CHECK(run("solve --catalog euler_log --to -1").code == 2);
}

TEST_CASE("help and catalog listings work") {
    CHECK(run("--help").code == 0);
    RunResult list = run("catalog list");
    REQUIRE(list.code == 0);
    auto j = as_json(list.out);
    bool has_bessel = false;
    for (const auto& item : j)
        if (item["name"] == "bessel") has_bessel = true;
    CHECK(has_bessel);

    RunResult show = run("catalog show euler_log");
    REQUIRE(show.code == 0);
    auto e = as_json(show.out);
    CHECK(e["name"] == "euler_log");
    CHECK(e["exact"] == "sin(k*ln(x))");
    CHECK(e["params"]["k"] == 2.0);

    CHECK(run("catalog show nope").code == 2);
}

TEST_CASE("verify riccati via the cli") {
    RunResult r = run("verify --check riccati --b \"-3\" --c 2 --ic 0,1,2 --window 0:3");
    REQUIRE(r.code == 0);
    auto j = as_json(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["max_residual"].get<double>() < 1e-4);
}

TEST_CASE("output goes to a file when asked") {
    std::string path = "/tmp/oscil_test_analyze.json";
    std::remove(path.c_str());
    RunResult r = run("analyze --catalog airy --output " + path);
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    FILE* f = fopen(path.c_str(), "r");
    REQUIRE(f != nullptr);
    std::array<char, 8192> buf;
    std::string content;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) content.append(buf.data(), n);
    fclose(f);
    CHECK_FALSE(content.empty());
    CHECK(as_json(content)["D"] == "4*x");
    std::remove(path.c_str());
}
