#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// exercises the installed binary end to end

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const std::string& out_path) {
    const std::string cmd = std::string(STEKLOV_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("steklov subcommand emits the sigma header and is byte-deterministic") {
    REQUIRE(run_cli("steklov --n 64", "/tmp/steklov_a.csv") == 0);
    REQUIRE(run_cli("steklov --n 64", "/tmp/steklov_b.csv") == 0);
    const std::string a = read_file("/tmp/steklov_a.csv");
    CHECK(a == read_file("/tmp/steklov_b.csv"));
    CHECK(a.find("# sigma1=0.4621171573, sigma2=2.1639534137") != std::string::npos);
    CHECK(a.find("x,phi1,phi2") != std::string::npos);
}

TEST_CASE("spectrum subcommand: csv table and config comment") {
    REQUIRE(run_cli("spectrum --gamma 1 --n-eigs 3 --grid 128", "/tmp/spec.csv") == 0);
    const std::string text = read_file("/tmp/spec.csv");
    CHECK(text.find("index,mu") != std::string::npos);
    CHECK(text.find("1,1.382097878") != std::string::npos);
    CHECK(text.rfind("# spectrum", 0) == 0);
}

TEST_CASE("attractor subcommand reports the R5 graph") {
    REQUIRE(run_cli("attractor --lambda 3 --g arctan", "/tmp/graph.json") == 0);
    const std::string text = read_file("/tmp/graph.json");
    CHECK(text.find("\"regime\": \"R5\"") != std::string::npos);
    // 5 nodes, 8 edges
    std::size_t nodes = 0, pos = 0;
    while ((pos = text.find("\"kind\"", pos)) != std::string::npos) {
        ++nodes;
        ++pos;
    }
    CHECK(nodes == 5 + 8);  // every node and edge carries a kind
}

TEST_CASE("flag errors exit with code 2, compute errors with 1") {
    CHECK(run_cli("spectrum --no-such-flag", "/tmp/err.txt") == 2);
    CHECK(run_cli("simulate --lambda 0 --g nope", "/tmp/err2.txt") == 1);
    CHECK(run_cli("", "/tmp/err3.txt") == 2);  // missing subcommand
}

TEST_CASE("simulate emits csv rows plus an event comment") {
    REQUIRE(run_cli("simulate --lambda -1 --g arctan --ic eigmode:1:0.1 --t-end 1 --grid 64",
                    "/tmp/sim.csv") == 0);
    const std::string text = read_file("/tmp/sim.csv");
    CHECK(text.find("t,l2_norm,energy,u1,u2,u3,u4,u5,u6") != std::string::npos);
    CHECK(text.find("# events") != std::string::npos);
}

TEST_CASE("simulate reports the blow-up event end to end") {
    REQUIRE(run_cli("simulate --lambda 1 --g arctan --ic eigmode:1:0.01 --t-end 60", "/tmp/blowup.csv") == 0);
    const std::string text = read_file("/tmp/blowup.csv");
    CHECK(text.find("blowup_threshold") != std::string::npos);
}

TEST_CASE("file initial conditions must match the grid") {
    {
        std::ofstream f("/tmp/ic64.csv");
        f << "x,u\n";
        for (int i = 0; i <= 64; ++i) {
            char line[64];
            std::snprintf(line, sizeof(line), "%.17g,%.17g\n", i / 64.0, 0.25 * i / 64.0);
            f << line;
        }
    }
    CHECK(run_cli("simulate --lambda -1 --g arctan --ic file:/tmp/ic64.csv --t-end 1 --grid 64",
                  "/tmp/simfile.csv") == 0);
    // wrong grid size -> node mismatch is a computational error
    CHECK(run_cli("simulate --lambda -1 --g arctan --ic file:/tmp/ic64.csv --t-end 1 --grid 100",
                  "/tmp/simfile2.csv") == 1);
}

TEST_CASE("results do not depend on the worker-thread cap") {
    const std::string args = "branch --g arctan --branch 2 --c-min 0.3 --c-max 3 --steps 16";
    const std::string cmd1 = "STEKLOV_THREADS=1 " + std::string(STEKLOV_CLI_PATH) + " " + args +
                             " > /tmp/branch1.csv 2>/dev/null";
    const std::string cmd4 = "STEKLOV_THREADS=4 " + std::string(STEKLOV_CLI_PATH) + " " + args +
                             " > /tmp/branch4.csv 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(cmd1.c_str())) == 0);
    REQUIRE(WEXITSTATUS(std::system(cmd4.c_str())) == 0);
    CHECK(read_file("/tmp/branch1.csv") == read_file("/tmp/branch4.csv"));
}

TEST_CASE("selftest reports all checks passing") {
    REQUIRE(run_cli("selftest", "/tmp/selftest.txt") == 0);
    const std::string text = read_file("/tmp/selftest.txt");
    CHECK(text.find("FAIL") == std::string::npos);
    CHECK(text.find("all checks passed") != std::string::npos);
}
