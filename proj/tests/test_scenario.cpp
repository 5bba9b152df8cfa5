#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "bft/scenario.hpp"

using namespace bft;
using Catch::Matchers::WithinAbs;

namespace {

std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(BFT_EXAMPLES_DIR) / name;
}

struct TempFile {
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("bft_scenario_" + std::to_string(counter++) + ".json");
    std::ofstream(path) << contents;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
  std::filesystem::path path;
};

bool mentions(const std::vector<ScenarioIssue>& issues, const std::string& where,
              const std::string& text) {
  return std::any_of(issues.begin(), issues.end(), [&](const ScenarioIssue& i) {
    return i.where.find(where) != std::string::npos &&
           i.message.find(text) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("the shipped worked scenarios load") {
  const Scenario t1 = load_scenario(fixture("table1.json"));
  CHECK(t1.frame->atoms() == std::vector<std::string>{"F", "E", "N"});
  CHECK(t1.frame->model_kind() == ModelKind::shafer);
  REQUIRE(t1.bbas.count("m1") == 1);
  REQUIRE(t1.bbas.count("m2") == 1);
  CHECK(t1.bbas.at("m1").entries().size() == 5);
  CHECK_THAT(t1.bbas.at("m1").mass_of(parse_expr("N", t1.frame)), WithinAbs(0.3, 1e-15));
  REQUIRE(t1.events.count("truth") == 1);
  CHECK(t1.events.at("truth") == parse_expr("F|E", t1.frame));

  const Scenario t2 = load_scenario(fixture("table2.json"));
  CHECK(t2.frame->atoms() == std::vector<std::string>{"A", "T", "S", "M"});
  CHECK(t2.bbas.at("m1").entries().size() == 3);
  CHECK(t2.events.at("truth") == parse_expr("T|M", t2.frame));
}

TEST_CASE("fractional masses convert on load") {
  TempFile file(R"({
    "frame": {"atoms": ["F", "E"], "model": "shafer"},
    "bbas": {"m": [
      {"expr": "F", "mass": "2/7"},
      {"expr": "E", "mass": "1/7"},
      {"expr": "F|E", "mass": "4/7"}
    ]}
  })");
  const Scenario s = load_scenario(file.path);
  CHECK_THAT(s.bbas.at("m").mass_of(parse_expr("F", s.frame)), WithinAbs(2.0 / 7, 1e-15));
  CHECK_THAT(s.bbas.at("m").mass_of(parse_expr("F|E", s.frame)), WithinAbs(4.0 / 7, 1e-15));
}

TEST_CASE("bad fractions are rejected") {
  for (const std::string bad : {"\"2/0\"", "\"x/3\"", "\"2/-1\"", "\"2/\"", "\"/3\""}) {
    TempFile file(R"({
      "frame": {"atoms": ["F", "E"], "model": "shafer"},
      "bbas": {"m": [{"expr": "F", "mass": )" + bad + R"(}]}
    })");
    const ScenarioCheck checked = check_scenario(file.path);
    CHECK_FALSE(checked.scenario.has_value());
    CHECK(mentions(checked.issues, "bbas.m[0].mass", "fraction"));
  }
}

TEST_CASE("a mass sum away from one is schema-valid but not a scenario") {
  TempFile file(R"({
    "frame": {"atoms": ["F", "E"], "model": "shafer"},
    "bbas": {"m": [{"expr": "F", "mass": 0.9}]}
  })");
  const ScenarioCheck checked = check_scenario(file.path);
  CHECK_FALSE(checked.scenario.has_value());
  CHECK(mentions(checked.issues, "bbas.m", "sum"));
  CHECK_THROWS_AS(load_scenario(file.path), ScenarioValidationError);
}

TEST_CASE("expression problems carry field path and position") {
  TempFile file(R"({
    "frame": {"atoms": ["F", "E"], "model": "shafer"},
    "bbas": {"m": [{"expr": "F|X", "mass": 1}]},
    "events": {"bad": "F|", "empty": "F&E"}
  })");
  const ScenarioCheck checked = check_scenario(file.path);
  CHECK_FALSE(checked.scenario.has_value());
  CHECK(mentions(checked.issues, "bbas.m[0].expr", "unknown atom 'X'"));
  CHECK(mentions(checked.issues, "bbas.m[0].expr", "position 2"));
  CHECK(mentions(checked.issues, "events.bad", "position"));
  CHECK(mentions(checked.issues, "events.empty", "empty set"));
}

TEST_CASE("schema violations are collected, not thrown") {
  TempFile file(R"({
    "frame": {"atoms": ["F", 3], "model": "bogus", "extra": 1},
    "bbas": {"m": [{"expr": "F", "mass": true, "typo": 0}]},
    "stray": {}
  })");
  const ScenarioCheck checked = check_scenario(file.path);
  CHECK_FALSE(checked.scenario.has_value());
  CHECK(mentions(checked.issues, "$", "unknown key 'stray'"));
  CHECK(mentions(checked.issues, "frame", "unknown key 'extra'"));
  CHECK(mentions(checked.issues, "frame.atoms", "strings"));
}

TEST_CASE("invalid JSON is an issue, a missing file is an I/O error") {
  TempFile file("{ not json");
  const ScenarioCheck checked = check_scenario(file.path);
  CHECK_FALSE(checked.scenario.has_value());
  REQUIRE(checked.issues.size() == 1);
  CHECK(checked.issues[0].message.find("invalid JSON") != std::string::npos);

  CHECK_THROWS_AS(check_scenario("/nonexistent/path/x.json"), ScenarioIoError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/path/x.json"), ScenarioIoError);
}

TEST_CASE("hybrid models load from constraint lists") {
  TempFile file(R"({
    "frame": {"atoms": ["a", "b", "c"], "model": {"empty": ["a&b", "a&c"]}},
    "bbas": {"m": [{"expr": "a", "mass": 0.5}, {"expr": "b&c", "mass": 0.5}]}
  })");
  const Scenario s = load_scenario(file.path);
  CHECK(s.frame->model_kind() == ModelKind::hybrid);
  CHECK(is_empty(parse_expr("a&b", s.frame)));
  CHECK(is_empty(parse_expr("a&c", s.frame)));
  CHECK_FALSE(is_empty(parse_expr("b&c", s.frame)));
}

TEST_CASE("events are optional and bbas may be empty") {
  TempFile file(R"({"frame": {"atoms": ["a", "b"], "model": "free"}})");
  const Scenario s = load_scenario(file.path);
  CHECK(s.bbas.empty());
  CHECK(s.events.empty());
}
