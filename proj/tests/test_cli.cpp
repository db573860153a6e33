#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const char* bin = std::getenv("QASYM_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = env_prefix + std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("scalar subcommands print pinned values", "[cli]") {
    RunResult r = run_cli("partition exact --q 0.5 --N 1 --L 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "5.656854249492380e0\n");

    r = run_cli("theta --q 0.5 --z -0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0e0\n");

    r = run_cli("theta --q 0.5 --z 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "2.128936827211877e0\n");

    r = run_cli("poly eval --family sw --n 2 --x 1 --q 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1.602943725152286e1\n");

    r = run_cli("poly eval --family qhermite --n 3 --x 0.7 --q 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "-2.576458341438801e0\n");

    r = run_cli("partition predict --q 0.5 --N 2 --L 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "7.371968801461317e0\n");
}

TEST_CASE("published table lines are byte-exact", "[cli]") {
    RunResult r = run_cli("poly zeros --family qlaguerre --n 20 --alpha 0.4 --q 0.6 --paper-table");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0.45,0.725,0.852,0.917,0.952,0.972,0.983,0.989,0.993,0.994\n");

    r = run_cli("poly zeros --family qlaguerre --n 25 --alpha 0.7 --q 0.5 --paper-table");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0.658,0.861,0.937,0.97,0.985,0.993,0.996,0.998,0.999,1.,1.,1.\n");
}

TEST_CASE("exit code contract", "[cli]") {
    CHECK(run_cli("frobnicate").exit_code == 1);                    // unknown subcommand
    CHECK(run_cli("theta --z 1 --q 1.5").exit_code == 1);           // out-of-range q
    CHECK(run_cli("theta --q 0.5").exit_code == 1);                 // missing required flag
    CHECK(run_cli("theta --q 0.5 --z 0").exit_code == 1);           // invalid argument value
    CHECK(run_cli("poly eval --family qhermite --n 2 --x 1 --j 1").exit_code == 1);
    CHECK(run_cli("partition exact --N 2 --L 2 --method sumL1").exit_code == 1);
    // numerical failure: a polynomial without the advertised positive zeros
    CHECK(run_cli("poly zeros --family qlaguerre --n 3 --alpha -2 --q 0.5").exit_code == 2);
    CHECK(run_cli("--version").exit_code == 0);
}

TEST_CASE("deterministic byte-identical output", "[cli]") {
    const std::string args = "partition converge --q 0.5 --L 2 --N-from 2 --N-to 6 --step 2";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    // parallel rows produce the same bytes as serial
    RunResult c = run_cli(args + " --jobs 3");
    CHECK(c.out == a.out);
}

TEST_CASE("output files carry the config echo", "[cli]") {
    std::remove("/tmp/qasym_cli_conv.csv");
    std::remove("/tmp/qasym_cli_conv.dat");
    RunResult r = run_cli(
        "partition converge --q 0.5 --L 1 --N-from 1 --N-to 4 --method sumL1 "
        "-o /tmp/qasym_cli_conv.csv");
    REQUIRE(r.exit_code == 0);
    std::string csv = slurp("/tmp/qasym_cli_conv.csv");
    CHECK(csv.rfind("# config: subcommand=partition converge q=0.5 precision_bits=256 "
                    "tail_tol=1e-40 version=qasym/1\n",
                    0) == 0);
    CHECK(csv.find("N,parity,scaled_exact,predicted,ratio,abs_err\n") != std::string::npos);
    // companion gnuplot data with the same echo
    std::string dat = slurp("/tmp/qasym_cli_conv.dat");
    CHECK(dat.rfind("# config:", 0) == 0);
    CHECK(dat.find("\n1 ") != std::string::npos);
}

TEST_CASE("json artifacts embed the config", "[cli]") {
    RunResult r = run_cli("poly zeros --family sw --n 3 --q 0.5 --format json");
    REQUIRE(r.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["config"]["subcommand"] == "poly zeros");
    CHECK(doc["config"]["q"] == "0.5");
    CHECK(doc["config"]["precision_bits"] == 256);
    CHECK(doc["config"]["version"] == "qasym/1");
    REQUIRE(doc["rows"].size() == 2);
    CHECK(doc["rows"][0]["k"] == 1);
    CHECK(doc["rows"][0]["normalized_product"] == "1.000000000000000e0");
    // middle self-paired entry of the odd-degree polynomial
    CHECK(doc["rows"][1]["x_k"] == doc["rows"][1]["x_{n+1-k}"]);

    r = run_cli("theta --q 0.5 --z 1 --format json");
    REQUIRE(r.exit_code == 0);
    doc = nlohmann::json::parse(r.out);
    CHECK(doc["value"] == "2.128936827211877e0");
}

TEST_CASE("precision env override", "[cli]") {
    RunResult r = run_cli("selftest", "QASYM_PRECISION_BITS=512 ");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("precision_bits=512") != std::string::npos);
    CHECK(r.out.find("selftest: 6/6 suites passed") != std::string::npos);
    // explicit flag wins over the environment
    r = run_cli("selftest --bits 320", "QASYM_PRECISION_BITS=512 ");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("precision_bits=320") != std::string::npos);
}

TEST_CASE("asym check stays within its certificate", "[cli]") {
    RunResult r = run_cli("asym check --family swigert --n 20 --j 1 --regime osc --y -1 --q 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("exact,estimate,error_bound,deviation\n") != std::string::npos);

    r = run_cli("asym check --family qlaguerre --alpha 0.4 --n 15 --regime right --y 0.7 --t 0");
    CHECK(r.exit_code == 0);

    r = run_cli("asym check --family ones --n 12 --regime left --y 1.3 --t -2");
    CHECK(r.exit_code == 0);

    // missing --t for a tail regime is a usage error
    CHECK(run_cli("asym check --family ones --n 12 --regime left --y 1.3").exit_code == 1);
}

TEST_CASE("selftest summary format", "[cli]") {
    RunResult r = run_cli("selftest --q 0.3");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("PASS triple-product") != std::string::npos);
    CHECK(r.out.find("PASS quasi-periodicity") != std::string::npos);
    CHECK(r.out.find("PASS q-binomial-theorem") != std::string::npos);
    CHECK(r.out.find("PASS shift-identity") != std::string::npos);
    CHECK(r.out.find("PASS sw-reflection") != std::string::npos);
    CHECK(r.out.find("PASS hermite-sw-bridge") != std::string::npos);
    CHECK(r.out.find("selftest: 6/6 suites passed") != std::string::npos);
}
