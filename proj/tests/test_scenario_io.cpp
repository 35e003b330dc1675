#include <doctest.h>

#include <string>

#include "qaecon/economics.hpp"
#include "qaecon/scenario_io.hpp"

using namespace qaecon;

namespace {

const char* kS2Json = R"({
  "units": {"currency": "kEUR", "effort": "staff-day"},
  "faults": [
    {"id": "i", "doc_class": "code", "pi": 0.2, "v_field": 35, "f_effect": 15,
     "predecessors": ["j"]},
    {"id": "j", "doc_class": "design"}
  ],
  "applications": [
    {"id": "insp", "setup_cost": 1, "exec_rate": 1, "effort": 1,
     "applicable_classes": ["design"],
     "difficulty": {"j": {"form": "constant", "theta0": 0.4}},
     "removal_cost": {"j": 2}},
    {"id": "test", "setup_cost": 2, "exec_rate": 1, "effort": 1,
     "applicable_classes": ["code"],
     "difficulty": {"i": {"form": "constant", "theta0": 0.3}},
     "removal_cost": {"i": 4}}
  ]
})";

}  // namespace

TEST_CASE("parses the fault-based form") {
  const LoadedScenario loaded = parse_scenario_json(kS2Json, "s2");
  CHECK_FALSE(loaded.from_defect_types);
  const Scenario& s = loaded.scenario;
  CHECK(s.currency_unit == "kEUR");
  CHECK(s.effort_unit == "staff-day");
  REQUIRE(s.faults.size() == 2);
  CHECK(s.faults[0].predecessors == std::vector<std::string>{"j"});
  REQUIRE(s.applications.size() == 2);
  CHECK(validate_scenario(s).ok());
  CHECK(direct_cost_combined(s) == doctest::Approx(7.32).epsilon(1e-12));
}

TEST_CASE("parses the type-based form and expands it") {
  const char* text = R"({
    "defect_types": [
      {"name": "control", "doc_class": "code", "expected_count": 3, "pi": 0.1,
       "v_field": 60, "f_effect": 40,
       "removal_cost": {"utest": 3},
       "difficulty": {"utest": {"form": "linear", "theta0": 1.0, "floor": 0.2, "rate": 0.05}}}
    ],
    "applications": [
      {"id": "utest", "setup_cost": 10, "exec_rate": 2, "effort": 5,
       "applicable_classes": ["code"]}
    ]
  })";
  const LoadedScenario loaded = parse_scenario_json(text, "practical");
  CHECK(loaded.from_defect_types);
  const Scenario& s = loaded.scenario;
  REQUIRE(s.faults.size() == 1);
  CHECK(s.faults[0].field_cost() == doctest::Approx(300));  // scaled by the count
  CHECK(s.applications[0].difficulty.at("control").form == CurveForm::Linear);
  CHECK(validate_scenario(s).ok());
}

TEST_CASE("syntax errors carry line and column") {
  const std::string bad = "{\n  \"faults\": [\n  broken\n]}";
  try {
    parse_scenario_json(bad, "bad.json");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    const std::string what = e.what();
    CHECK(what.find("bad.json:3:") != std::string::npos);
  }
}

TEST_CASE("schema errors carry the field path") {
  SUBCASE("unknown field") {
    const char* text = R"({"faults": [{"id": "a", "doc_class": "code", "bogus": 1}],
                           "applications": []})";
    try {
      parse_scenario_json(text, "x");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(std::string(e.what()).find("faults[0].bogus") != std::string::npos);
    }
  }
  SUBCASE("wrong type") {
    const char* text = R"({"faults": [{"id": "a", "doc_class": "code", "pi": "high"}],
                           "applications": []})";
    try {
      parse_scenario_json(text, "x");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(std::string(e.what()).find("faults[0].pi") != std::string::npos);
      CHECK(std::string(e.what()).find("number") != std::string::npos);
    }
  }
  SUBCASE("missing required field") {
    const char* text = R"({"faults": [{"doc_class": "code"}], "applications": []})";
    CHECK_THROWS_AS(parse_scenario_json(text, "x"), parse_error);
  }
  SUBCASE("unknown curve form") {
    const char* text = R"({"faults": [{"id": "a", "doc_class": "code"}],
      "applications": [{"id": "t", "difficulty": {"a": {"form": "step", "theta0": 1}}}]})";
    try {
      parse_scenario_json(text, "x");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
  }
}

TEST_CASE("exactly one of faults and defect_types") {
  CHECK_THROWS_AS(parse_scenario_json(R"({"applications": []})", "x"), parse_error);
  CHECK_THROWS_AS(
      parse_scenario_json(R"({"faults": [], "defect_types": [], "applications": []})", "x"),
      parse_error);
}

TEST_CASE("type-based form referencing an unknown technique fails to parse") {
  const char* text = R"({
    "defect_types": [
      {"name": "t", "doc_class": "code", "removal_cost": {"ghost": 1}}
    ],
    "applications": [{"id": "utest"}]
  })";
  CHECK_THROWS_AS(parse_scenario_json(text, "x"), parse_error);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_scenario_file("/nonexistent/file.json"), parse_error);
}

TEST_CASE("render and reparse round trip") {
  const Scenario original = parse_scenario_json(kS2Json, "s2").scenario;
  const std::string text = scenario_to_json(original);
  const Scenario reparsed = parse_scenario_json(text, "round").scenario;

  CHECK(reparsed.currency_unit == original.currency_unit);
  REQUIRE(reparsed.faults.size() == original.faults.size());
  REQUIRE(reparsed.applications.size() == original.applications.size());
  const CostBreakdown a = evaluate_scenario(original);
  const CostBreakdown b = evaluate_scenario(reparsed);
  CHECK(a.direct == doctest::Approx(b.direct).epsilon(1e-15));
  CHECK(a.future == doctest::Approx(b.future).epsilon(1e-15));
  CHECK(a.revenue == doctest::Approx(b.revenue).epsilon(1e-15));
}

TEST_CASE("shipped example scenarios load and validate") {
  const std::string root = QAECON_SOURCE_DIR;
  const LoadedScenario s1 = load_scenario_file(root + "/scenarios/s1.json");
  CHECK(validate_scenario(s1.scenario).ok());
  CHECK(direct_cost_combined(s1.scenario) == doctest::Approx(22.0));
  const LoadedScenario s2 = load_scenario_file(root + "/scenarios/s2.json");
  CHECK(validate_scenario(s2.scenario).ok());
  CHECK(future_cost_combined(s2.scenario) == doctest::Approx(1.2));
}
