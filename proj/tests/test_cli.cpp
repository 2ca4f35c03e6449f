#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qturn/cli/commands.hpp"
#include "qturn/cli/config.hpp"
#include "qturn/cli/report_json.hpp"

using namespace qturn;
using json = nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "qturn");
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "qturn_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json without_timings(json j) {
    j.erase("timings");
    return j;
}

}  // namespace

TEST_CASE("word command") {
    Run r = run({"word", "URDRURDLDL"});
    CHECK(r.code == 0);
    CHECK(r.out.find("index:              0") != std::string::npos);
    CHECK(r.out.find("sectors:            H,E,H,I,H") != std::string::npos);
    CHECK(r.out.find("IP_c:               -1") != std::string::npos);
    CHECK(r.out.find("→↓← repulsive at infinity") != std::string::npos);
    CHECK(r.out.find("conservative:       no") != std::string::npos);
    CHECK(r.out.find("module lower bound: 2") != std::string::npos);

    Run s = run({"word", "URDL", "--json"});
    CHECK(s.code == 0);
    json j = json::parse(s.out);
    CHECK(j["symbolic_index"] == 0);
    CHECK(j["sector_types"] == json::array({"H", "H"}));
    CHECK(j["conservative"] == true);
    CHECK(j["ip_cyclic"] == "-1");
}

TEST_CASE("word command errors") {
    Run r = run({"word", "UU"});
    CHECK(r.code == 2);
    CHECK(r.err.find("not allowed") != std::string::npos);
    Run p = run({"word", "UR?L"});
    CHECK(p.code == 2);
    CHECK(p.err.find("column 3") != std::string::npos);
    CHECK(run({"word"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify a single word") {
    Run r = run({"verify", "URDL"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["format"] == "qturn-report/1");
    CHECK(j["status"] == "pass");
    CHECK(j["symbolic_index"] == 0);
    CHECK(j["numeric_index"] == 0);
    CHECK(j["config"]["candidates"]["samples"] == 512);
    CHECK(j.contains("chart_conventions"));

    CHECK(run({"verify", "UR"}).code == 2);
    CHECK(run({"verify"}).code == 2);
    CHECK(run({"verify", "URDL", "--sweep", "2"}).code == 2);
    CHECK(run({"verify", "URDL", "--samples", "3"}).code == 2);
}

TEST_CASE("flags reach the embedded config") {
    Run r = run({"verify", "URDLURDL", "--radius", "2", "--samples", "256", "--seed", "7", "--jobs", "2"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["config"]["winding"]["radius"] == 2.0);
    CHECK(j["config"]["candidates"]["base_radius"] == 2.0);
    CHECK(j["config"]["candidates"]["samples"] == 256);
    CHECK(j["config"]["candidates"]["seed"] == 7);
    CHECK(j["config"]["jobs"] == 2);
    CHECK(j["module_estimate"] == 4);
}

TEST_CASE("re-running with the embedded config reproduces the numbers") {
    auto out = temp("report.json");
    Run a = run({"verify", "URDRURDLDL", "--radius", "0.5", "--out", out.string()});
    REQUIRE(a.code == 0);
    CHECK(a.out.empty());
    json first = json::parse(slurp(out));
    auto in = temp("report_in.json");
    std::filesystem::copy_file(out, in, std::filesystem::copy_options::overwrite_existing);
    std::filesystem::remove(out);
    // the output path is part of the config, so the second run writes the same file
    Run b = run({"verify", "URDRURDLDL", "--config", in.string()});
    REQUIRE(b.code == 0);
    CHECK(b.out.empty());
    json second = json::parse(slurp(out));
    CHECK(without_timings(first).dump() == without_timings(second).dump());

    // a bare config file works too, and unknown keys are refused
    auto cfg = temp("config.json");
    std::ofstream(cfg) << R"({"candidates": {"samples": 256}})";
    Run c = run({"verify", "URDL", "--config", cfg.string()});
    CHECK(c.code == 0);
    CHECK(json::parse(c.out)["config"]["candidates"]["samples"] == 256);
    std::ofstream(cfg) << R"({"candidates": {"sample": 256}})";
    CHECK(run({"verify", "URDL", "--config", cfg.string()}).code == 2);
    CHECK(run({"verify", "URDL", "--config", temp("missing.json").string()}).code == 2);
}

TEST_CASE("config serialization round trip") {
    cli::Config c;
    c.pipeline.fate.r_in = 1e-5;
    c.pipeline.winding.max_depth = 7;
    c.pipeline.freeness.tau_relative = 3e-8;
    c.pipeline.candidates.stars = 2;
    c.pipeline.reverse_probes = 500;
    c.sweep_d = 3;
    c.include_index_one = true;
    c.out = "x.json";
    c.grid = 12;
    json j = cli::to_json(c);
    cli::Config d = cli::config_from_json(j);
    CHECK(cli::to_json(d).dump() == j.dump());
    json bad = j;
    bad["winding"]["radius"] = -1.0;
    CHECK_THROWS_AS(cli::config_from_json(bad), std::invalid_argument);
    bad = j;
    bad["fate"] = 3;
    CHECK_THROWS_AS(cli::config_from_json(bad), std::invalid_argument);
}

TEST_CASE("default jobs come from the environment") {
    ::setenv("QTURN_JOBS", "3", 1);
    CHECK(cli::default_jobs() == 3);
    ::setenv("QTURN_JOBS", "zero", 1);
    CHECK(cli::default_jobs() == 1);
    ::unsetenv("QTURN_JOBS");
    CHECK(cli::default_jobs() == 1);
}

TEST_CASE("sweeps") {
    Run r = run({"verify", "--sweep", "3"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["summary"]["failed"] == 0);
    CHECK(j["summary"]["outside_theory"] == 0);
    CHECK(j["summary"]["passed"] == j["summary"]["total"]);
    for (const auto& rep : j["reports"]) CHECK(rep["symbolic_index"] != 1);
    CHECK(j["matrix"]["rows"].size() == j["reports"].size());

    Run two = run({"verify", "--sweep", "2", "--include-index-one"});
    CHECK(two.code == 0);
    json k = json::parse(two.out);
    CHECK(k["summary"]["failed"] == 0);
    CHECK(k["summary"]["outside_theory"] > 0);
    for (const auto& rep : k["reports"])
        if (rep["symbolic_index"] == 1) CHECK(rep["status"] == "outside theory");

    // merge order does not depend on the worker count
    Run par = run({"verify", "--sweep", "2", "--include-index-one", "--jobs", "3"});
    json p = json::parse(par.out);
    REQUIRE(p["reports"].size() == k["reports"].size());
    for (std::size_t i = 0; i < p["reports"].size(); ++i) {
        CHECK(p["reports"][i]["word_in"] == k["reports"][i]["word_in"]);
        CHECK(p["reports"][i]["h_lengths"] == k["reports"][i]["h_lengths"]);
    }
    CHECK(run({"verify", "--sweep", "1"}).code == 2);
}

TEST_CASE("render") {
    auto svg = temp("ex.svg");
    std::filesystem::remove(svg);
    Run r = run({"render", "URDRURDLDL", "--out", svg.string()});
    CHECK(r.code == 0);
    REQUIRE(std::filesystem::exists(svg));
    std::string text = slurp(svg);
    std::size_t rays = 0;
    for (std::size_t pos = 0; (pos = text.find("<line class=\"sector-ray\"", pos)) != std::string::npos; ++pos) ++rays;
    CHECK(rays == 5);
    CHECK(text.find("class=\"curve\"") != std::string::npos);
    CHECK(text.find("class=\"vertex\"") != std::string::npos);
    CHECK(text.find("class=\"forward\"") != std::string::npos);

    Run again = run({"render", "URDRURDLDL"});
    CHECK(again.out == text);

    Run g = run({"render", "URDL", "--grid", "16"});
    CHECK(g.code == 0);
    std::istringstream lines(g.out);
    std::string line;
    std::size_t n = 0;
    std::getline(lines, line);
    CHECK(line == "row,col,x,y,alpha,omega,colour");
    while (std::getline(lines, line)) ++n;
    CHECK(n == 256);
    CHECK(run({"render", "URDL", "--grid", "16"}).out == g.out);
    CHECK(run({"render", "URDL", "--grid", "16", "--seed", "9"}).out == g.out);

    auto csv = temp("fates.csv");
    CHECK(run({"render", "URDL", "--grid", "8", "--csv", csv.string()}).code == 0);
    CHECK(std::filesystem::file_size(csv) > 0);

    Run bad = run({"render", "URDL", "--out", "/nonexistent-dir/x.svg"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("/nonexistent-dir/x.svg") != std::string::npos);
    CHECK(run({"render", "UU"}).code == 2);
}

TEST_CASE("streaks follow the seed") {
    Run a = run({"render", "URDRURDLDL", "--seed", "1"});
    Run b = run({"render", "URDRURDLDL", "--seed", "2"});
    CHECK(a.out != b.out);
}
