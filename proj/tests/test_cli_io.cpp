#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radavg/report_io.hpp"
#include "radavg/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace radavg;
namespace fs = std::filesystem;

TEST_CASE("weight configs round-trip") {
    const std::vector<std::string> specs{
        "family=powerlog,a=1,b=0",
        "family=powerlog,a=-0.5,b=2,scale=1.5",
        "family=monomial,c=2",
        "family=monomial,c=0,scale=0",
        "family=oscillating,K=2,base.family=powerlog,base.a=0,base.b=0",
        "family=tabulated,samples=0:1|0.5:2|0.75:4",
    };
    for (const auto& spec : specs) {
        const RadialWeight w = RadialWeight::from_config(spec);
        const RadialWeight w2 = RadialWeight::from_config(w.to_config());
        for (double r : {0.1, 0.45, 0.8, 0.95})
            CHECK(w(r) == w2(r));
    }
}

TEST_CASE("config accepts multi-line key-value files") {
    const RadialWeight w =
        RadialWeight::from_config("family = powerlog\na = 1\nb = 2\n");
    CHECK(w.param_a() == 1.0);
    CHECK(w.param_b() == 2.0);
    CHECK_THROWS(RadialWeight::from_config("a=1"));           // no family
    CHECK_THROWS(RadialWeight::from_config("family=sine"));   // unknown
}

TEST_CASE("tabulated weights load from two-column CSV") {
    const fs::path tmp = fs::temp_directory_path() / "radavg_w.csv";
    std::ofstream(tmp) << "# r,value\n0.0,1.0\n0.5,2.0\n0.9,4.0\n";
    const RadialWeight w = RadialWeight::from_config("family=tabulated,csv=" +
                                                     tmp.string());
    CHECK(w(0.2) == 1.0);
    CHECK(w(0.7) == 2.0);
    CHECK(w(0.95) == 4.0);
    CHECK(w.to_config().find(tmp.string()) != std::string::npos);
    fs::remove(tmp);
}

TEST_CASE("profile CSV has the documented columns") {
    const RadialGrid g = RadialGrid::dyadic(6, 2);
    const ConditionProfile p = sup_profile([](double r) { return r; }, g);
    const fs::path tmp = fs::temp_directory_path() / "radavg_profile.csv";
    write_profile_csv(tmp.string(), p);
    std::ifstream in(tmp);
    std::string header;
    std::getline(in, header);
    CHECK(header == "level,r,value,running_sup");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == g.size());
    fs::remove(tmp);
}

TEST_CASE("json encodes infinities as strings") {
    CHECK(json_num(1.5) == nlohmann::json(1.5));
    CHECK(json_num(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("builtin catalogue") {
    const auto scenarios = builtin_scenarios();
    REQUIRE(scenarios.size() >= 6);
    for (const auto& s : scenarios) {
        CHECK(!s.name.empty());
        CHECK(!s.description.empty());
        CHECK(!s.expected.empty());
    }
    CHECK(scenarios[4].name == "co7-qgtp");
    CHECK(scenarios[4].expected.at("necessary_second") == "DivergesPower");
}

TEST_CASE("scenario run writes reports and matches expectations") {
    const fs::path out = fs::temp_directory_path() / "radavg_scenario_out";
    fs::remove_all(out);
    Scenario s = builtin_scenarios()[0]; // power-basic
    const ScenarioResult res = run_scenario(s, out.string(), 40);
    CHECK(res.ok);
    CHECK(fs::exists(out / s.name / "summary.json"));
    CHECK(fs::exists(out / s.name / "dp.csv"));
    CHECK(fs::exists(out / s.name / "mp.csv"));
    // reports are byte-identical across repeated runs
    std::stringstream a, b;
    a << std::ifstream((out / s.name / "summary.json")).rdbuf();
    run_scenario(s, out.string(), 40);
    b << std::ifstream((out / s.name / "summary.json")).rdbuf();
    CHECK(a.str() == b.str());
    fs::remove_all(out);
}

TEST_CASE("scenario mismatch is reported") {
    Scenario s = builtin_scenarios()[0];
    s.expected["dp"] = "Infinite"; // wrong on purpose
    const ScenarioResult res = run_scenario(s, "", 40);
    CHECK_FALSE(res.ok);
    REQUIRE(res.mismatches.size() == 1);
    CHECK(res.mismatches[0].find("dp") == 0);
}
