#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fuzzy_evolve/cli.hpp"

using namespace fuzzy_evolve;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scenario_path(const char* name) { return std::string(FE_SCENARIO_DIR) + "/" + name + ".json"; }

std::string csv_section(const std::string& csv, const std::string& header) {
  const auto at = csv.find(header);
  if (at == std::string::npos) return "";
  const auto end = csv.find("\n#", at + 1);
  return csv.substr(at, end == std::string::npos ? std::string::npos : end - at);
}

}  // namespace

TEST_CASE("run on a bundled name and on the file give the same report numbers") {
  const auto a = cli({"run", "example1", "--trials", "50"});
  const auto b = cli({"run", scenario_path("example1"), "--trials", "50"});
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  CHECK(json::parse(a.out)["runs"] == json::parse(b.out)["runs"]);
  CHECK_FALSE(a.err.empty());
}

TEST_CASE("reports are byte-identical across worker counts") {
  const auto one = cli({"run", "example3", "--trials", "200", "--workers", "1"});
  const auto many = cli({"run", "example3", "--trials", "200", "--workers", "3"});
  CHECK(one.out == many.out);
}

TEST_CASE("the embedded scenario reproduces the report") {
  const auto first = cli({"run", "example2", "--trials", "100", "--seed", "9"});
  REQUIRE(first.code == kExitOk);
  const auto doc = json::parse(first.out);
  const auto path = std::filesystem::temp_directory_path() / "fe_cli_roundtrip.json";
  {
    std::ofstream f(path);
    f << doc["runs"][0]["scenario"].dump();
  }
  const auto again = cli({"run", path.string()});
  std::filesystem::remove(path);
  REQUIRE(again.code == kExitOk);
  CHECK(json::parse(again.out)["runs"] == doc["runs"]);
}

TEST_CASE("seed precedence") {
  const auto seed_of = [](const Result& r) {
    return json::parse(r.out)["runs"][0]["scenario"]["master_seed"].get<std::uint64_t>();
  };
  const std::string minimal = R"({"model": "prrlem-degroot", "initial_opinions": [1, 4, 2], "trials": 5})";
  const auto path = std::filesystem::temp_directory_path() / "fe_cli_seed.json";
  {
    std::ofstream f(path);
    f << minimal;
  }
  ::unsetenv("FUZZY_EVOLVE_SEED");
  CHECK(seed_of(cli({"run", path.string()})) == 1);
  ::setenv("FUZZY_EVOLVE_SEED", "31", 1);
  CHECK(seed_of(cli({"run", path.string()})) == 31);
  CHECK(seed_of(cli({"run", path.string(), "--seed", "8"})) == 8);
  CHECK(seed_of(cli({"run", "example1", "--trials", "5"})) == 2024);
  ::setenv("FUZZY_EVOLVE_SEED", "abc", 1);
  CHECK(cli({"run", path.string()}).code == kExitInputError);
  ::unsetenv("FUZZY_EVOLVE_SEED");
  std::filesystem::remove(path);
}

TEST_CASE("csv and json carry the same numbers") {
  const auto j = cli({"run", "example2", "--trials", "40"});
  const auto c = cli({"run", "example2", "--trials", "40", "--format", "csv"});
  REQUIRE(c.code == kExitOk);
  const auto rows = json::parse(j.out)["runs"][0]["decision"]["rows"];
  std::istringstream section(csv_section(c.out, "# run 0 intervals"));
  std::string line;
  std::getline(section, line);
  std::getline(section, line);
  REQUIRE(line == "row,term,count,point,lo,hi,rep");
  std::size_t checked = 0;
  while (std::getline(section, line) && !line.empty()) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    REQUIRE(f.size() == 7);
    const auto r = std::stoul(f[0].substr(2)) - 1;
    const auto xi = std::stoul(f[1]);
    const auto& ci = rows[r]["intervals"][xi];
    CHECK(std::strtod(f[3].c_str(), nullptr) == ci["point"].get<double>());
    CHECK(std::strtod(f[4].c_str(), nullptr) == ci["lo"].get<double>());
    CHECK(std::strtod(f[5].c_str(), nullptr) == ci["hi"].get<double>());
    CHECK(std::strtod(f[6].c_str(), nullptr) == rows[r]["rep"][xi].get<double>());
    ++checked;
  }
  CHECK(checked == 15 * 7);
}

TEST_CASE("space runs all three variants") {
  const auto r = cli({"run", "space", "--trials", "30"});
  REQUIRE(r.code == kExitOk);
  CHECK(json::parse(r.out)["runs"].size() == 3);
}

TEST_CASE("trace output") {
  const auto r = cli({"run", "example1", "--trials", "3", "--iterations", "2", "--trace"});
  REQUIRE(r.code == kExitOk);
  const auto traces = json::parse(r.out)["runs"][0]["traces"];
  REQUIRE(traces.size() == 3);
  CHECK(traces[0]["snapshots"].size() == 3);
  CHECK(traces[0]["leaders"].size() == 2);
  CHECK_FALSE(json::parse(cli({"run", "example1", "--trials", "3"}).out)["runs"][0].contains("traces"));
}

TEST_CASE("compare") {
  const auto r = cli({"compare", "example2", "--trials", "30", "--models", "prrlem-hohk", "--eps-grid",
                      "0.15,0.2,0.25,0.3"});
  REQUIRE(r.code == kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["columns"].size() == 4);
  CHECK(doc["agreement"].size() == 4);
  const auto two = cli({"compare", "example1", "--trials", "30", "--models", "classic-degroot-equal,prrlem-degroot"});
  CHECK(json::parse(two.out)["columns"].size() == 2);
  CHECK(cli({"compare", "example1", "--models", "prrlem-hohk"}).code == kExitInputError);
  CHECK(cli({"compare", "example1", "--models", "nope"}).code == kExitInputError);
}

TEST_CASE("robustness") {
  const auto r = cli({"robustness", "example1", "--trials", "100", "--perturb", "agent=9,opinion=1"});
  REQUIRE(r.code == kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["columns"].size() == 2);
  CHECK(doc.contains("verdict"));
  const auto two = cli({"robustness", "example3", "--trials", "100", "--perturb", "agent=9,opinion=1",
                        "--perturb", "agent=7,eps=0.1"});
  REQUIRE(two.code == kExitOk);
  CHECK(json::parse(two.out)["perturbations"].size() == 2);
}

TEST_CASE("exit codes") {
  CHECK(cli({"robustness", "example1"}).code == kExitInputError);
  CHECK(cli({"robustness", "example1", "--perturb", "agent=0,opinion=1"}).code == kExitInputError);
  CHECK(cli({"robustness", "example1", "--perturb", "agent=2"}).code == kExitInputError);
  CHECK(cli({"robustness", "example1", "--perturb", "agent=99,opinion=1"}).code == kExitInputError);
  CHECK(cli({"robustness", "example1", "--perturb", "agent=1,eps=0.2"}).code == kExitInputError);
  CHECK(cli({"run", "/nonexistent/x.json"}).code == kExitIoError);
  CHECK(cli({"run", "example1", "--trials", "0"}).code == kExitInputError);
  CHECK(cli({"run", "example1", "--format", "xml"}).code == kExitInputError);
  CHECK(cli({"run", "example1", "--trials", "5", "--out", "/nonexistent/dir/out.json"}).code == kExitIoError);
  CHECK(cli({"bogus"}).code == kExitInputError);
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({"scenarios"}).code == kExitOk);
  CHECK(cli({"scenarios", "example2"}).code == kExitOk);
  CHECK(cli({"scenarios", "nope"}).code == kExitInputError);
}

TEST_CASE("--out writes the file and leaves stdout empty") {
  const auto path = std::filesystem::temp_directory_path() / "fe_cli_out.json";
  const auto r = cli({"run", "example1", "--trials", "5", "--out", path.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(json::parse(ss.str())["runs"].size() == 1);
  std::filesystem::remove(path);
}
