#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>

#include "iforms/scenario.hpp"

using namespace iforms;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(INERTIA_FORMS_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_config(const std::string& name, const std::string& body) {
    const std::string path = "cli_" + name + ".json";
    std::ofstream out(path);
    out << body;
    return path;
}

const char* kZ2Config = R"({
  "field": {"type": "rational"},
  "action": {"type": "finite", "generators": [[["-1"]]]},
  "cutoff": 6
})";

const char* kCircleConfig = R"({
  "field": {"type": "rational"},
  "action": {"type": "circle", "weights": [1], "fixed_dims": 0},
  "cutoff": 6
})";

const char* kMoritaConfig = R"({
  "action": {"type": "finite",
             "generators": [[["0","1","0"],["1","0","0"],["0","0","1"]],
                             [["1","0","0"],["0","0","1"],["0","1","0"]]]},
  "cutoff": 4,
  "subgroup": {"generators": [[["0","1","0"],["1","0","0"],["0","0","1"]]],
               "slice_action": [[["-1"]]]}
})";

const char* kChartConfig = R"({
  "action": {"type": "finite", "generators": [[["1"]]]},
  "cutoff": 4,
  "charts": {
    "spaces": [
      {"dim": 1, "components": [[["1"]]]},
      {"dim": 2, "components": [[["1","0"]]]},
      {"dim": 3, "components": [[["1","0","0"]]]}
    ],
    "transfers": [
      {"src": 1, "dst": 0, "matrix": [["1"],["0"]]},
      {"src": 2, "dst": 1, "matrix": [["1","0"],["0","1"],["0","0"]]},
      {"src": 2, "dst": 0, "matrix": [["1"],["0"],["0"]]},
      {"src": 2, "dst": 1, "matrix": [["1","0"],["0","1"],["0","1"]]}
    ],
    "independence_pairs": [[1, 3]],
    "cocycle_triples": [[1, 0, 2]]
  }
})";

} // namespace

TEST_CASE("verify exits 0 on the Z/2 and circle scenarios") {
    const std::string z2 = write_config("z2", kZ2Config);
    CHECK(run("verify --config " + z2).exit_code == 0);
    const std::string circle = write_config("circle", kCircleConfig);
    CHECK(run("verify --config " + circle).exit_code == 0);
}

TEST_CASE("fault injection flips verify to exit 1") {
    const std::string z2 = write_config("z2", kZ2Config);
    const RunResult r = run("verify --config " + z2 + " --fault inject");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("FAIL") != std::string::npos);
    const std::string circle = write_config("circle", kCircleConfig);
    CHECK(run("verify --config " + circle + " --fault inject").exit_code == 1);
}

TEST_CASE("configuration errors exit 2") {
    const std::string bad = write_config("bad", "{\"cutoff\": 3}");
    CHECK(run("verify --config " + bad).exit_code == 2);
    const std::string nojson = write_config("nojson", "not json at all");
    CHECK(run("dims --config " + nojson).exit_code == 2);
    CHECK(run("dims --config does_not_exist.json").exit_code == 2);
    const std::string z2 = write_config("z2", kZ2Config);
    CHECK(run("verify --config " + z2 + " --fault bogus").exit_code == 2);
    // morita without a subgroup section
    CHECK(run("morita --config " + z2).exit_code == 2);
}

TEST_CASE("loopspace lists fixed subspaces") {
    const std::string z2 = write_config("z2", kZ2Config);
    const RunResult r = run("loopspace --config " + z2 + " --format json");
    CHECK(r.exit_code == 0);
    const Json out = Json::parse(r.output);
    CHECK(out["tables"]["loopspace"].size() == 2);
    CHECK(out["tables"]["loopspace"][0]["fixed_dim"].get<int>() == 1);
    CHECK(out["tables"]["loopspace"][1]["fixed_dim"].get<int>() == 0);
    CHECK(out["version"].get<std::string>() == std::string(kVersion));
}

TEST_CASE("dims emits the basic dimension tables in all formats") {
    const std::string circle = write_config("circle", kCircleConfig);
    const RunResult json = run("dims --config " + circle + " --format json");
    CHECK(json.exit_code == 0);
    const Json out = Json::parse(json.output);
    CHECK(out["tables"]["relative_dims"]["2"]["1"].get<long>() == 4);
    CHECK(out["tables"]["basic_dims"]["2"]["1"].get<long>() == 1);

    const RunResult csv = run("dims --config " + circle + " --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.output.find("w,k,dim") != std::string::npos);

    const RunResult table = run("dims --config " + circle + " --format table");
    CHECK(table.exit_code == 0);
    CHECK(table.output.find("[basic_dims]") != std::string::npos);
}

TEST_CASE("the cutoff override reshapes the tables") {
    const std::string circle = write_config("circle", kCircleConfig);
    const RunResult r = run("dims --config " + circle + " --format json --cutoff 2");
    CHECK(r.exit_code == 0);
    const Json out = Json::parse(r.output);
    CHECK(out["scenario"]["cutoff"].get<int>() == 2);
    CHECK(out["tables"]["basic_dims"].contains("2"));
    CHECK_FALSE(out["tables"]["basic_dims"].contains("3"));
}

TEST_CASE("identical scenario and seed give byte-identical JSON") {
    const std::string circle = write_config("circle", kCircleConfig);
    const RunResult a = run("verify --config " + circle + " --format json");
    const RunResult b = run("verify --config " + circle + " --format json");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    const RunResult h1 = run("homotopy-check --config " + circle + " --format json --seed 5 --samples 25");
    const RunResult h2 = run("homotopy-check --config " + circle + " --format json --seed 5 --samples 25");
    CHECK(h1.exit_code == 0);
    CHECK(h1.output == h2.output);
}

TEST_CASE("homotopy-check passes, and zero samples pass vacuously") {
    const std::string z2 = write_config("z2", kZ2Config);
    CHECK(run("homotopy-check --config " + z2 + " --samples 100 --seed 7").exit_code == 0);
    CHECK(run("homotopy-check --config " + z2 + " --samples 0").exit_code == 0);
    const std::string circle = write_config("circle", kCircleConfig);
    CHECK(run("homotopy-check --config " + circle + " --samples 50 --seed 9").exit_code == 0);
    // trivial group sampled across weights up to 8
    const std::string trivial = write_config(
        "trivial", R"({"action": {"type": "finite", "generators": [[["1","0"],["0","1"]]]},
                       "cutoff": 8})");
    CHECK(run("homotopy-check --config " + trivial + " --samples 60 --seed 3").exit_code == 0);
}

TEST_CASE("loopspace rows for the cyclic rotation group") {
    const std::string c4 = write_config(
        "c4", R"({"action": {"type": "finite", "generators": [[["0","-1"],["1","0"]]]},
                  "cutoff": 4})");
    const RunResult r = run("loopspace --config " + c4 + " --format json");
    CHECK(r.exit_code == 0);
    const Json out = Json::parse(r.output);
    std::multiset<int> dims;
    for (const auto& row : out["tables"]["loopspace"]) dims.insert(row["fixed_dim"].get<int>());
    CHECK(dims == std::multiset<int>{0, 0, 0, 2});
}

TEST_CASE("morita subcommand compares the slice model") {
    const std::string cfg = write_config("morita", kMoritaConfig);
    const RunResult r = run("morita --config " + cfg + " --format json");
    CHECK(r.exit_code == 0);
    const Json out = Json::parse(r.output);
    bool saw = false;
    for (const auto& a : out["assertions"]) {
        CHECK(a["pass"].get<bool>());
        saw = true;
    }
    CHECK(saw);
}

TEST_CASE("chart-check runs transfers, independence and cocycle checks") {
    const std::string cfg = write_config("charts", kChartConfig);
    const RunResult r = run("chart-check --config " + cfg + " --format json");
    CHECK(r.exit_code == 0);
    const Json out = Json::parse(r.output);
    int cocycles = 0, independence = 0;
    for (const auto& a : out["assertions"]) {
        CHECK(a["pass"].get<bool>());
        const std::string name = a["name"].get<std::string>();
        if (name == "cocycle") ++cocycles;
        if (name == "embedding_independence") ++independence;
    }
    CHECK(cocycles == 1);
    CHECK(independence == 1);
}

TEST_CASE("cohomology emits tables and passes on good scenarios") {
    const std::string z2 = write_config("z2", kZ2Config);
    const RunResult r = run("cohomology --config " + z2 + " --format json");
    CHECK(r.exit_code == 0);
    const Json out = Json::parse(r.output);
    CHECK(out["tables"]["cohomology"]["0"][0].get<long>() == 2);
}

TEST_CASE("verify runs the morita and chart sections when configured") {
    const std::string cfg = write_config("morita", kMoritaConfig);
    const RunResult r = run("verify --config " + cfg + " --format json");
    CHECK(r.exit_code == 0);
    const Json out = Json::parse(r.output);
    bool saw_morita = false;
    for (const auto& a : out["assertions"])
        if (a["name"].get<std::string>().rfind("morita/", 0) == 0) saw_morita = true;
    CHECK(saw_morita);
}
