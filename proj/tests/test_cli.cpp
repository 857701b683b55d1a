#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "hilfer/config.hpp"
#include "hilfer/psi.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out, err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int seq = 0;
    std::string out = "/tmp/hilfer_cli_out_" + std::to_string(seq);
    std::string err = "/tmp/hilfer_cli_err_" + std::to_string(seq);
    ++seq;
    std::string cmd = std::string(HILFER_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    std::remove(out.c_str());
    std::remove(err.c_str());
    return r;
}

std::string write_config(const json& doc, const std::string& name) {
    std::string path = "/tmp/" + name;
    std::ofstream(path) << doc.dump(2);
    return path;
}

} // namespace

TEST_CASE("criteria subcommand emits the constants") {
    auto r = run_cli("criteria --scenario example-4.1-i");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["delta"].get<double>() == doctest::Approx(-1.94081).epsilon(1e-4));
    CHECK(j["theta"].get<double>() == doctest::Approx(1.34089).epsilon(1e-4));
    CHECK(j["banach"]["holds"].get<bool>());
    CHECK(j["ulam"]["holds"].get<bool>());
    REQUIRE(j.contains("reference_values"));
    CHECK(j["reference_values"]["c_f"].contains("difference"));
}

TEST_CASE("repeated runs are byte-identical") {
    auto a = run_cli("criteria --scenario example-4.1-ii");
    auto b = run_cli("criteria --scenario example-4.1-ii");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    auto c = run_cli("solve --scenario example-4.1-i --grid-n 256");
    auto d = run_cli("solve --scenario example-4.1-i --grid-n 256");
    REQUIRE(c.code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("solve emits a t,u table") {
    auto r = run_cli("solve --scenario example-4.1-i --grid-n 128");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "t,u");
    std::size_t rows = 0;
    double first_u = -1.0;
    while (std::getline(lines, line)) {
        if (rows == 0) {
            auto comma = line.find(',');
            CHECK(std::stod(line.substr(0, comma)) == 0.0);
            first_u = std::stod(line.substr(comma + 1));
        }
        ++rows;
    }
    CHECK(rows == 129);
    CHECK(first_u == 0.0);
    // converged summary goes to stderr
    auto j = json::parse(r.err);
    CHECK(j["converged"].get<bool>());
}

TEST_CASE("solve honors --out") {
    std::string path = "/tmp/hilfer_solve_out.csv";
    auto r = run_cli("solve --scenario example-4.1-iii --grid-n 256 --out " + path);
    REQUIRE(r.code == 0);
    auto body = slurp(path);
    CHECK(body.rfind("t,u", 0) == 0);
    std::remove(path.c_str());
}

TEST_CASE("zeta-scan brackets the admissible radii") {
    auto r = run_cli("zeta-scan --scenario example-4.1-ii");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "r,zeta");
    bool first = true;
    while (std::getline(lines, line)) {
        auto comma = line.find(',');
        double rr = std::stod(line.substr(0, comma));
        double z = std::stod(line.substr(comma + 1));
        if (first) {
            CHECK(rr == 0.0);
            CHECK(z > 0.0);
            first = false;
        }
        if (rr >= 0.3 && rr <= 0.9) CHECK(z < 0.0);
    }
}

TEST_CASE("zeta-scan without growth metadata is an invalid problem") {
    auto r = run_cli("zeta-scan --scenario example-4.1-i");
    CHECK(r.code == 2);
    auto j = json::parse(r.err);
    CHECK(j.contains("error"));
}

TEST_CASE("stability subcommand reports passing experiments") {
    auto r = run_cli("stability --scenario example-4.1-i --grid-n 512");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["experiments"].size() == 2);
    for (const auto& e : j["experiments"]) {
        CHECK(e["pass"].get<bool>());
        CHECK(e["sup_diff"].get<double>() <= e["bound"].get<double>() + 1e-9);
    }
}

TEST_CASE("config errors exit with 3") {
    CHECK(run_cli("criteria --scenario no-such-scenario").code == 3);
    CHECK(run_cli("criteria").code != 0); // neither config nor scenario

    std::ofstream("/tmp/hilfer_broken.json") << "{ not json";
    CHECK(run_cli("criteria --config /tmp/hilfer_broken.json").code == 3);

    auto doc = hilfer::builtin_scenario_json("example-4.1-i");
    doc["problem"].erase("f");
    auto path = write_config(doc, "hilfer_missing_f.json");
    auto r = run_cli("criteria --config " + path);
    CHECK(r.code == 3);
    auto j = json::parse(r.err);
    CHECK(j["error"]["message"].get<std::string>().find("problem.f") != std::string::npos);
}

TEST_CASE("degenerate problems exit with 2") {
    auto doc = hilfer::builtin_scenario_json("example-4.1-i");
    auto psi = hilfer::PsiFunction::exp_saturating(std::sqrt(2.0), 0.0, 7.0 / 6.0);
    double mu = 1.75;
    double alpha = psi.power(1.0, psi.T()) * (mu - 1.0) * hilfer::gamma_fn(mu - 1.0) /
                   psi.power(mu - 1.0, 0.5);
    doc["problem"]["etas"] = {0.5};
    doc["problem"]["alphas"] = {alpha};
    doc["problem"]["betas"] = {0.0};
    auto path = write_config(doc, "hilfer_degenerate.json");
    auto r = run_cli("criteria --config " + path);
    CHECK(r.code == 2);
    auto j = json::parse(r.err);
    CHECK(j.contains("error"));
}

TEST_CASE("non-convergence exits with 1") {
    auto doc = hilfer::builtin_scenario_json("example-4.1-i");
    doc["solver"]["max_iter"] = 1;
    doc["solver"]["tol"] = 1e-15;
    auto path = write_config(doc, "hilfer_short.json");
    auto r = run_cli("solve --config " + path + " --grid-n 256");
    CHECK(r.code == 1);
}

TEST_CASE("corrected mode runs end to end") {
    auto r = run_cli("criteria --scenario example-4.1-i --mode corrected");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    // the corrected boundary coefficients change Delta-independent
    // constants like Theta
    CHECK(j["theta"].get<double>() != doctest::Approx(1.34089).epsilon(1e-4));
}

TEST_CASE("sweep solve writes one file per variant") {
    auto doc = hilfer::builtin_scenario_json("example-4.1-sweep");
    doc["sweep"]["families"] = {"tangent"};
    doc["sweep"]["rhos"] = {1.1};
    doc["sweep"]["lambdas"] = {0.0, 0.01};
    auto path = write_config(doc, "hilfer_sweep.json");
    std::string base = "/tmp/hilfer_sweep_out";
    auto r = run_cli("solve --config " + path + " --grid-n 256 --out " + base);
    REQUIRE(r.code == 0);
    for (const char* suffix : {"-tangent-rho-1.1-lambda-0.csv",
                               "-tangent-rho-1.1-lambda-0.01.csv"}) {
        std::string f = base + suffix;
        auto body = slurp(f);
        CHECK(body.rfind("t,u", 0) == 0);
        std::remove(f.c_str());
    }
}
