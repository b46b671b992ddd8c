#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using radgas::cli::dispatch;

namespace {

struct Out {
    std::ostringstream out, err;
    int code = -1;
};

Out call(const std::vector<std::string>& args) {
    Out o;
    o.code = dispatch(args, o.out, o.err);
    return o;
}

fs::path scratch_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("radgas_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

const char* kSmallConfig = R"({
  "case_id": 5, "u_minus": 0.2, "u_plus": 0.6, "L": 200, "n_points": 801,
  "cfl": 0.8, "t_final": 1.0, "sample_times": [0.5],
  "perturbation": {"shape": "gaussian", "amplitude": 0.0, "center": 20, "width": 1}
})";

}  // namespace

TEST_CASE("coeffs table") {
    const Out o = call({"coeffs", "5"});
    CHECK(o.code == 0);
    CHECK(o.out.str() == "a1 = 1·√2\na2 = -3·√2\na3 = 24·√2\na4 = -285·√2\na5 = 4284·√2\n");
    CHECK(call({"coeffs", "31"}).code == 2);
}

TEST_CASE("usage and config errors") {
    const Out none = call({});
    CHECK(none.code == 2);
    const Out bogus = call({"frobnicate"});
    CHECK(bogus.code == 2);
    CHECK(nlohmann::json::parse(bogus.err.str())["error"] == "usage");

    const Out missing = call({"run", "/nonexistent/case.json"});
    CHECK(missing.code == 2);
    const auto j = nlohmann::json::parse(missing.err.str());
    CHECK(j.contains("error"));
    CHECK(j.contains("message"));

    const fs::path d = scratch_dir("bad");
    std::ofstream(d / "bad.json") << "{\"case_id\": 4, \"u_minus\": 0.3}";
    CHECK(call({"run", (d / "bad.json").string(), "--out", d.string()}).code == 2);
    std::ofstream(d / "sign.json") << kSmallConfig;
    CHECK(call({"run", (d / "sign.json").string(), "--out", d.string(), "--set", "u_minus=-0.2"}).code == 2);
}

TEST_CASE("run output is deterministic") {
    const fs::path d = scratch_dir("run");
    std::ofstream(d / "small.json") << kSmallConfig;
    const Out a = call({"run", (d / "small.json").string(), "--out", (d / "a").string()});
    INFO(a.err.str());
    REQUIRE(a.code == 0);
    const Out b = call({"run", (d / "small.json").string(), "--out", (d / "b").string()});
    REQUIRE(b.code == 0);
    const std::string ca = slurp(d / "a" / "small.csv");
    CHECK(ca.rfind("t,w_l2,", 0) == 0);
    CHECK(ca == slurp(d / "b" / "small.csv"));
    const auto summary = nlohmann::json::parse(slurp(d / "a" / "small_summary.json"));
    CHECK(summary.contains("checks"));
    CHECK(summary["config"]["case_id"] == 5);
}
