#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "radial/errors.hpp"
#include "radial/suite.hpp"

using namespace radial;
using nlohmann::json;

namespace {

std::string tmp(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("radial_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run(const std::string& args, const std::string& out = "/dev/null") {
    std::string cmd = std::string(RADIAL_CLI_PATH) + " " + args + " > " + out + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

SuiteConfig kramers_config() {
    SuiteConfig cfg;
    cfg.command = "kramers";
    cfg.potential = "coulomb";
    cfg.n = IntRange{1, 3};
    cfg.s = IntRange{-3, 2};
    cfg.mode = "both";
    return cfg;
}

}  // namespace

TEST_CASE("empty report") {
    std::ostringstream os;
    emit_report({}, Format::Json, os);
    CHECK(json::parse(os.str()) == json::array());
}

TEST_CASE("json schema of a sum-rule report") {
    auto reports = run_suite(kramers_config());
    REQUIRE(!reports.empty());
    std::ostringstream os;
    emit_report(reports, Format::Json, os);
    auto arr = json::parse(os.str());
    REQUIRE(arr.size() == reports.size());
    for (const auto& j : arr) {
        for (const char* k : {"case", "lhs_terms", "rhs_boundary", "residual", "scale", "tolerance", "pass",
                              "delta_triggered", "params"})
            CHECK(j.contains(k));
        for (const char* k : {"theorem", "potential", "n_r", "l", "s_or_f", "mode"}) CHECK(j["case"].contains(k));
        CHECK(j["params"]["hbar"] == 1.0);
    }
}

TEST_CASE("json numbers round trip exactly") {
    auto reports = run_suite(kramers_config());
    std::ostringstream os;
    emit_report(reports, Format::Json, os);
    auto arr = json::parse(os.str());
    for (size_t i = 0; i < reports.size(); ++i) {
        const auto* r = std::get_if<SumRuleReport>(&reports[i].report);
        REQUIRE(r);
        CHECK(arr[i]["residual"].get<double>() == r->residual);
        CHECK(arr[i]["scale"].get<double>() == r->scale);
        for (size_t k = 0; k < r->lhs_terms.size(); ++k)
            CHECK(arr[i]["lhs_terms"][k]["value"].get<double>() == r->lhs_terms[k].value);
    }
}

TEST_CASE("csv header and row count") {
    auto reports = run_suite(kramers_config());
    std::ostringstream os;
    emit_report(reports, Format::Csv, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line ==
          "theorem,potential,n_r,l,s_or_f,mode,lhs_terms,rhs_boundary,residual,scale,tolerance,pass,delta_triggered,"
          "error");
    size_t rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == reports.size());
}

TEST_CASE("report writing errors") {
    CHECK_THROWS_AS(write_report({}, Format::Json, "/nonexistent/dir/out.json"), IoError);
    std::string path = tmp("empty.json");
    write_report({}, Format::Json, path);
    CHECK(json::parse(slurp(path)) == json::array());
    std::filesystem::remove(path);
}

TEST_CASE("ranges and formats") {
    auto r = parse_range("-7..4");
    CHECK(r.lo == -7);
    CHECK(r.hi == 4);
    auto one = parse_range("3");
    CHECK(one.lo == 3);
    CHECK(one.hi == 3);
    CHECK_THROWS_AS(parse_range("5..1"), ConfigError);
    CHECK_THROWS_AS(parse_range("a..b"), ConfigError);
    CHECK(parse_format("csv") == Format::Csv);
    CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}

TEST_CASE("case keys sort numerically in s") {
    CaseKey a{"kramers", "coulomb", 0, 0, "-3", "classic"};
    CaseKey b{"kramers", "coulomb", 0, 0, "2", "classic"};
    CaseKey c{"kramers", "coulomb", 0, 0, "10", "classic"};
    CHECK(key_less(a, b));
    CHECK(key_less(b, c));
    CHECK_FALSE(key_less(c, b));
    CaseKey d{"kramers", "coulomb", 0, 1, "-3", "classic"};
    CHECK(key_less(c, d));
    auto reports = run_suite(kramers_config());
    for (size_t i = 1; i < reports.size(); ++i)
        CHECK_FALSE(key_less(report_key(reports[i].report), report_key(reports[i - 1].report)));
}

TEST_CASE("config validation") {
    SuiteConfig cfg = kramers_config();
    cfg.potential = "nope";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = kramers_config();
    cfg.mode = "sideways";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("classic rows fail exactly at s = -(2l+1)") {
    std::string out = tmp("kramers.json");
    CHECK(run("kramers --potential coulomb --n 1..5 --s -7..4 --mode both --format json", out) == 1);
    auto arr = json::parse(slurp(out));
    int fails = 0;
    for (const auto& j : arr) {
        int l = j["case"]["l"];
        int s = std::stoi(j["case"]["s_or_f"].get<std::string>());
        bool expect_fail = j["case"]["mode"] == "classic" && s == -(2 * l + 1);
        CHECK(j["pass"].get<bool>() == !expect_fail);
        fails += !j["pass"].get<bool>();
    }
    CHECK(fails == 14);
    std::filesystem::remove(out);
}

TEST_CASE("cli exit codes") {
    CHECK(run("ehrenfest --potential coulomb --n 1..3") == 0);
    CHECK(run("kramers --potential coulomb --n 1..3 --s -1..2 --mode modified") == 0);
    CHECK(run("kramers --potential nope") == 2);
    CHECK(run("kramers --potential coulomb --n 1..3 --format xml") == 2);
    CHECK(run("kramers --bogus-flag") == 2);
    CHECK(run("kramers --potential coulomb --n 1 --out /nonexistent/dir/x.json") == 2);
}

TEST_CASE("solve writes a grid dump") {
    std::string dump = tmp("solve.txt");
    CHECK(run("solve --potential kratzer --e2 1 --v0 1 --l 1 --nodes 0 --dump " + dump) == 0);
    std::ifstream f(dump);
    std::string first;
    std::getline(f, first);
    REQUIRE(first.rfind("# E=", 0) == 0);
    CHECK(std::stod(first.substr(4)) == doctest::Approx(-0.5).epsilon(1e-5));
    auto st = load_grid_dump(dump);
    CHECK(st.l == 1);
    std::filesystem::remove(dump);
}

TEST_CASE("output does not depend on the thread count") {
    std::string a = tmp("t1.json"), b = tmp("t4.json");
    std::string args = "hypervirial --potential oscillator --nodes 0..2 --l 0..2 --s -1..3 --format json";
    CHECK(run("", "/dev/null") == 2);
    CHECK(std::system(("RADIAL_THEOREMS_THREADS=1 " + std::string(RADIAL_CLI_PATH) + " " + args + " > " + a).c_str()) ==
          0);
    CHECK(std::system(("RADIAL_THEOREMS_THREADS=4 " + std::string(RADIAL_CLI_PATH) + " " + args + " > " + b).c_str()) ==
          0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST_CASE("the full suite passes") {
    std::string out = tmp("suite.json");
    CHECK(run("suite --format json", out) == 0);
    auto arr = json::parse(slurp(out));
    CHECK(arr.size() > 100);
    for (const auto& j : arr) CHECK(j["pass"].get<bool>());
    std::filesystem::remove(out);
}
