#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fuzzy_evolve/errors.hpp"
#include "fuzzy_evolve/scenario_file.hpp"

using namespace fuzzy_evolve;

namespace {

const char* kMinimal = R"({
  "model": "prrlem-hohk",
  "initial_opinions": [1, 4, 1, 2],
  "thresholds": 0.21
})";

std::string error_of(std::string_view text) {
  try {
    parse_scenario_document(text);
  } catch (const ScenarioError& e) {
    return std::string(e.field()) + " | " + e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal document takes defaults") {
  const auto suite = parse_scenario_document(kMinimal);
  REQUIRE(suite.scenarios.size() == 1);
  const auto& s = suite.scenarios.front();
  CHECK(s.model() == ModelKind::PrrlemHoHK);
  CHECK(s.agents() == 4);
  CHECK(s.trials() == 1000);
  CHECK(s.iterations() == 9);
  CHECK(s.z_value() == 1.96);
  CHECK(s.master_seed() == 1);
  CHECK(s.scale() == LinguisticTermSet(3, 1.37));
  CHECK(s.thresholds()->homogeneous);
}

TEST_CASE("seed precedence inside the document") {
  CHECK(parse_scenario_document(kMinimal, 77).scenarios[0].master_seed() == 77);
  auto doc = nlohmann::json::parse(kMinimal);
  doc["master_seed"] = 5;
  CHECK(parse_scenario_document(doc.dump(), 77).scenarios[0].master_seed() == 5);
}

TEST_CASE("scenario_to_json round trip") {
  for (const auto& name : bundled_scenario_names()) {
    const auto suite = parse_scenario_document(*bundled_scenario(name));
    for (const auto& s : suite.scenarios) {
      const auto echoed = parse_scenario_document(scenario_to_json(s).dump());
      REQUIRE(echoed.scenarios.size() == 1);
      CHECK(echoed.scenarios[0].params() == s.params());
    }
  }
}

TEST_CASE("bundled scenarios") {
  const auto names = bundled_scenario_names();
  for (const char* n : {"example1", "example2", "example3", "space"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
  CHECK_FALSE(bundled_scenario("nope").has_value());
  const auto space = parse_scenario_document(*bundled_scenario("space"));
  REQUIRE(space.scenarios.size() == 3);
  CHECK(space.scenarios[0].model() == ModelKind::PrrlemDeGroot);
  CHECK(space.scenarios[1].model() == ModelKind::PrrlemHoHK);
  CHECK(space.scenarios[2].model() == ModelKind::PrrlemHeHK);
  for (const auto& s : space.scenarios) CHECK(s.agents() == 10);
  const auto ex1 = parse_scenario_document(*bundled_scenario("example1")).scenarios.at(0);
  CHECK(ex1.master_seed() == 2024);
  CHECK(ex1.initial_opinions()[8] == Term{5});
}

TEST_CASE("errors name the field") {
  CHECK(error_of(R"({"model": "prrlem-hohk", "initial_opinions": [1, 2], "thresholds": 0.2, "colour": 1})")
            .starts_with("colour"));
  CHECK(error_of(R"({"model": "nope", "initial_opinions": [1, 2]})").starts_with("model"));
  CHECK(error_of(R"({"model": "prrlem-degroot", "initial_opinions": [1, 9]})").starts_with("initial_opinions[1]"));
  CHECK(error_of(R"({"model": "prrlem-degroot", "initial_opinions": [1, 2], "agents": 3})").starts_with("agents"));
  CHECK(error_of(R"({"model": "prrlem-degroot", "initial_opinions": [1, 2], "trials": -1})").starts_with("trials"));
  CHECK(error_of(R"({"model": "prrlem-degroot", "initial_opinions": [1, 2], "thresholds": 0.2})")
            .starts_with("thresholds"));
  CHECK(error_of(R"({"model": "prrlem-hehk", "initial_opinions": [1, 2], "thresholds": [0.2]})")
            .starts_with("thresholds"));
  CHECK(error_of(R"({"initial_opinions": [1, 2], "variants": [{"model": "prrlem-hohk"}]})")
            .starts_with("variants[0]."));
  const auto syntax = error_of("{\n  \"model\": \"prrlem-degroot\",\n  oops\n}");
  CHECK(syntax.find("line 3") != std::string::npos);
}

TEST_CASE("load_scenario_file") {
  CHECK_THROWS_AS(load_scenario_file("/nonexistent/dir/x.json"), IoError);
  const auto path = std::filesystem::temp_directory_path() / "fe_scenario_file_test.json";
  {
    std::ofstream f(path);
    f << kMinimal;
  }
  CHECK(load_scenario_file(path).scenarios.size() == 1);
  std::filesystem::remove(path);
}
