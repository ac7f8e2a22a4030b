#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weyllaw/errors.hpp"
#include "weyllaw/experiments.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace wl;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(WEYLLAW_CLI) + " " + args + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string body(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    std::string line;
    while (std::getline(f, line))
        if (line.rfind("#", 0) != 0) ss << line << "\n";
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("weyllaw_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("config helpers") {
    ExperimentConfig c;
    c.params = {{"n", "3"}, {"t", "50, 60,70"}, {"x", "abc"}};
    CHECK(c.get_int("n", 2) == 3);
    CHECK(c.get_int("m", 7) == 7);
    CHECK(c.get_list("t", {}) == std::vector<double>{50, 60, 70});
    CHECK_THROWS_AS(c.get_int("x", 0), ConfigInvalid);
}

TEST_CASE("INI config") {
    const fs::path d = scratch("ini");
    {
        std::ofstream f(d / "a.ini");
        f << "[experiment]\nname = hecke-degree\nseed = 9\n\n[params]\nn = 2\np = 2,3\nmaxnorm = 2\n";
    }
    const auto c = ExperimentConfig::from_ini((d / "a.ini").string());
    CHECK(c.name == "hecke-degree");
    CHECK(c.seed == 9);
    CHECK(c.get("p", "") == "2,3");
    {
        std::ofstream f(d / "b.ini");
        f << "[weird]\nk = 1\n";
    }
    CHECK_THROWS_AS(ExperimentConfig::from_ini((d / "b.ini").string()), ConfigInvalid);
}

TEST_CASE("unknown experiments and parameters") {
    ExperimentConfig c;
    c.name = "nope";
    CHECK_THROWS_AS(run_experiment(c), ConfigInvalid);
    c.name = "hecke-degree";
    c.params["bogus"] = "1";
    CHECK_THROWS_AS(run_experiment(c), ConfigInvalid);
    ExperimentConfig w;
    w.name = "weyl-main-term";
    w.params["t"] = "";
    CHECK_THROWS_AS(run_experiment(w), ConfigInvalid);
    CHECK(experiment_names().size() == 14);
    CHECK(experiment_module("padic-volumes") == "padic_volumes");
}

TEST_CASE("exit codes") {
    const fs::path d = scratch("exit");
    CHECK(run_cli("weyl-main-term --n 2 --D -4 --t 50,100 --out " + d.string()) == 0);
    CHECK(run_cli("weyl-main-term --n 2 --D -4 --t \"\"") == 2);
    CHECK(run_cli("weyl-main-term --D -5") == 2);
    CHECK(run_cli("hecke-degree --set nonsense=1") == 2);
    CHECK(run_cli("no-such-command") == 2);
    // a deliberately impossible tolerance is a check failure, not a config error
    CHECK(run_cli("descent-check --set trials=3 --set tol=0") == 1);
    CHECK(fs::exists(d / "weyl-main-term.csv"));
    CHECK(fs::exists(d / "weyl-main-term.summary.txt"));
}

TEST_CASE("byte-identical bodies under a fixed seed") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    const std::string args = "spherical-oracle --n 2 --samples 5000 --set pairs=3 --set se_max=1 --seed 7 --out ";
    REQUIRE(run_cli(args + a.string()) == 0);
    REQUIRE(run_cli(args + b.string()) == 0);
    CHECK(body(a / "spherical-oracle.csv") == body(b / "spherical-oracle.csv"));
    CHECK(!body(a / "spherical-oracle.csv").empty());
    REQUIRE(run_cli("spherical-oracle --n 2 --samples 5000 --set pairs=3 --set se_max=1 --seed 8 --out " + b.string()) == 0);
    CHECK(body(a / "spherical-oracle.csv") != body(b / "spherical-oracle.csv"));
}

TEST_CASE("central term lists every ideal once") {
    // ideals of norm m in Z[i]: sum over d | m of chi_{-4}(d)
    auto chi = [](int d) { return d % 2 == 0 ? 0 : (d % 4 == 1 ? 1 : -1); };
    int expected = 0;
    for (int m = 1; m <= 40; ++m)
        for (int d = 1; d <= m; ++d)
            if (m % d == 0) expected += chi(d);
    ExperimentConfig c;
    c.name = "central-term";
    c.params["maxnorm"] = "40";
    const Report r = run_experiment(c);
    CHECK(static_cast<int>(r.rows.size()) == expected);
    CHECK(r.passed());
    int units = 0;
    for (const auto& row : r.rows)
        if (row[4] == "1") ++units;
    CHECK(units >= 4);  // (1), (2), (4) = (2)^2 ... are squares of principal ideals
}
