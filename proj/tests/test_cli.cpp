#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "synto/instances.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Run {
    int code = -1;
    std::string out, err;
};

Run run_cli(const std::string& args, const std::string& env = "") {
    std::string so = "/tmp/synto_cli_out.txt", se = "/tmp/synto_cli_err.txt";
    std::string cmd = (env.empty() ? "" : "env " + env + " ") + std::string(SYNTO_CLI_PATH) +
                      " " + args + " >" + so + " 2>" + se;
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, slurp(so), slurp(se)};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("syntomic -p 2 -n -1 --format json lists the two classes") {
    auto r = run_cli("syntomic -p 2 -n -1 --format json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("classes").size() == 2);
    CHECK(j["classes"][0].at("label") == "∂");
    CHECK(j["classes"][0].at("degree") == -1);
    CHECK(j["classes"][1].at("label") == "1");
    CHECK(j["classes"][1].at("degree") == 0);
}

TEST_CASE("height-2 subcommands reject small primes with a config error") {
    for (const char* cmd : {"k-bp2", "tc-bp2"}) {
        auto r = run_cli(std::string(cmd) + " -p 3");
        CHECK(r.code == 2);
        CHECK(r.err.find("PRECONDITION") != std::string::npos);
        CHECK(r.out.empty());
    }
}

TEST_CASE("bad invocations exit with the config code") {
    CHECK(run_cli("no-such-command").code == 2);
    CHECK(run_cli("syntomic --format yaml").code == 2);
    CHECK(run_cli("syntomic -p 4").code == 2);
    CHECK(run_cli("tp -p 2 -n -3").code == 2);
    CHECK(run_cli("tp -p 2 --window nonsense").code == 2);
    CHECK(run_cli("run-custom").code == 2);
}

TEST_CASE("window problems exit with the window code") {
    CHECK(run_cli("tp -p 2 -n 0 --window 5..1").code == 3);
    auto capped = run_cli("tp -p 2 -n 0 --window -40..40", "SYNTO_MAX_WINDOW=10");
    CHECK(capped.code == 3);
    CHECK(capped.err.find("WINDOW_TOO_SMALL") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical and --out matches stdout") {
    auto a = run_cli("tp -p 2 -n 1 --format svg");
    auto b = run_cli("tp -p 2 -n 1 --format svg");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto f = run_cli("tp -p 2 -n 1 --format svg --out /tmp/synto_cli_file.svg");
    REQUIRE(f.code == 0);
    CHECK(f.out.empty());
    CHECK(slurp("/tmp/synto_cli_file.svg") == a.out);
}

TEST_CASE("tp json carries the differential log") {
    auto r = run_cli("tp -p 2 -n 1 --format json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.contains("differentials"));
    CHECK(j["differentials"].size() > 0);
    for (const auto& d : j["differentials"])
        CHECK(d.at("target").at("degree").get<int>() ==
              d.at("source").at("degree").get<int>() - 1);
}

TEST_CASE("run-custom: d(x) = t leaves only the unit class") {
    write_file("/tmp/synto_defs_ok.json", R"({
      "p": 2,
      "shift": {"degree": -1, "weight": 1},
      "filtration_gen": "t",
      "generators": [
        {"name": "x", "kind": "exterior", "degree": 1, "adams_weight": 0},
        {"name": "t", "kind": "polynomial", "degree": 0, "adams_weight": 1}
      ],
      "rules": [{"page": 1, "gen": "x", "step": 1,
                 "image": [{"coeff": 1, "exponents": {"t": 1}}]}],
      "window": {"deg_lo": 0, "deg_hi": 4, "exp_bounds": {"t": [0, 8]}}
    })");
    auto r = run_cli("run-custom --defs /tmp/synto_defs_ok.json --format json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("classes").size() == 1);
    CHECK(j["classes"][0].at("label") == "1");
    REQUIRE(j.contains("differentials"));
    CHECK(j["differentials"][0].at("page") == 1);
    CHECK(j["differentials"][0].at("rank").get<int>() > 0);
}

TEST_CASE("run-custom: rule with wrong image bidegree is rejected") {
    write_file("/tmp/synto_defs_bad.json", R"({
      "p": 2,
      "shift": {"degree": -1, "weight": 1},
      "generators": [
        {"name": "x", "kind": "exterior", "degree": 1, "adams_weight": 0},
        {"name": "t", "kind": "polynomial", "degree": 0, "adams_weight": 1}
      ],
      "rules": [{"page": 1, "gen": "x", "step": 1,
                 "image": [{"coeff": 1, "exponents": {"t": 2}}]}]
    })");
    auto r = run_cli("run-custom --defs /tmp/synto_defs_bad.json --window 0..4");
    CHECK(r.code == 2);
    CHECK(r.err.find("BIDEGREE_MISMATCH") != std::string::npos);
}

TEST_CASE("run-custom: malformed JSON reports the offending field") {
    write_file("/tmp/synto_defs_parse.json", R"({"p": 2, "shift": {"degree": -1}})");
    auto r = run_cli("run-custom --defs /tmp/synto_defs_parse.json");
    CHECK(r.code == 2);
    CHECK(r.err.find("PARSE_ERROR") != std::string::npos);
    CHECK(r.err.find("weight") != std::string::npos);
}

TEST_CASE("verify subcommand reports all nine criteria and exits cleanly") {
    auto r = run_cli("verify");
    CHECK(r.code == 0);
    for (int i = 1; i <= 9; ++i)
        CHECK(r.out.find("criterion " + std::to_string(i) + ": PASS") != std::string::npos);
}

TEST_CASE("syntomic text output agrees with the library basis") {
    auto r = run_cli("syntomic -p 3 -n 0");
    REQUIRE(r.code == 0);
    for (const auto& label : synto::inst::syntomic(3, 0).basis.labels())
        CHECK(r.out.find(label) != std::string::npos);
}
