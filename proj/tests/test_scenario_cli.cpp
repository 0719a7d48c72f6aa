#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>

#include "capmass/errors.hpp"
#include "capmass/report.hpp"
#include "capmass/runner.hpp"
#include "capmass/scenario.hpp"
#include "capmass/toml_lite.hpp"

using namespace capmass;

namespace {

const std::string kScenarios = CAPMASS_SCENARIO_DIR;
const std::string kData = CAPMASS_TEST_DATA_DIR;

// Line and field of the ParseError thrown by parsing `text`.
std::pair<int, std::string> parse_failure(const std::string& text) {
  try {
    parse_scenario(text, "inline");
  } catch (const ParseError& e) {
    return {e.line(), e.field()};
  }
  FAIL("expected a ParseError");
  return {};
}

const char* kMinimal = R"(name = "t"
dimension = 3
boundary_r0 = 2.0
checks = ["Theorem1"]
[metric]
kind = "schwarzschild"
mass = 2.0
)";

}  // namespace

TEST_CASE("toml subset") {
  const TomlDocument d = parse_toml(R"(# comment
title = "a \"quoted\" é"  # trailing
count = 1_000
ratio = -2.5e-3
flag = true
list = [1, 2.5,
        3]
a.b = 4
[table]
inner = "x"
[[items]]
v = 1
[[items]]
v = 2
)",
                                    "doc");
  CHECK(d.root["title"] == "a \"quoted\" é");
  CHECK(d.root["count"] == 1000);
  CHECK(d.root["ratio"].get<double>() == doctest::Approx(-2.5e-3));
  CHECK(d.root["flag"] == true);
  CHECK(d.root["list"].size() == 3);
  CHECK(d.root["a"]["b"] == 4);
  CHECK(d.root["table"]["inner"] == "x");
  CHECK(d.root["items"][1]["v"] == 2);
  CHECK(d.line_of("table.inner") == 10);
  CHECK(d.line_of("items[1].v") == 14);
  CHECK(d.line_of("list") == 6);

  CHECK_THROWS_AS(parse_toml("a = 1\na = 2\n", "dup"), ParseError);
  CHECK_THROWS_AS(parse_toml("[t]\n[t]\n", "dup"), ParseError);
  CHECK_THROWS_AS(parse_toml("x = {a = 1}\n", "inline"), ParseError);
  CHECK_THROWS_AS(parse_toml("x = \"open\n", "str"), ParseError);
  CHECK_THROWS_AS(parse_toml("x = [1, 2\n", "arr"), ParseError);
  CHECK_THROWS_AS(parse_toml("= 3\n", "key"), ParseError);
  try {
    parse_toml("ok = 1\n\nbad = 1.2.3\n", "file.toml");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.field() == "bad");
  }
}

TEST_CASE("scenario schema") {
  const Scenario s = parse_scenario(kMinimal, "inline");
  CHECK(s.name == "t");
  CHECK(s.dimension == 3);
  CHECK(s.metric.kind == ProfileKind::kSchwarzschild);
  CHECK(s.metric.mass == 2.0);
  CHECK(s.spin);
  CHECK(s.numerics.grid_points == 2000);
  CHECK(s.expand().size() == 1);

  SUBCASE("checks are put in dependency order without duplicates") {
    const Scenario t = parse_scenario(std::string(kMinimal).replace(
                                          std::string(kMinimal).find("[\"Theorem1\"]"), 12,
                                          R"(["AppendixA", "ConformalProof", "Theorem1", "Theorem1"])"),
                                      "inline");
    REQUIRE(t.checks.size() == 3);
    CHECK(t.checks[0] == CheckKind::kTheorem1);
    CHECK(t.checks[1] == CheckKind::kConformalProof);
    CHECK(t.checks[2] == CheckKind::kAppendixA);
  }
  SUBCASE("errors carry line and field") {
    CHECK(parse_failure(std::string(kMinimal) + "extra = 1\n") == std::pair<int, std::string>{8, "metric.extra"});
    CHECK(parse_failure("name = \"t\"\ndimension = 2\n").second == "dimension");
    CHECK(parse_failure(R"(name = "t"
dimension = 3
boundary_r0 = 2.0
checks = ["Theorem9"]
)") == std::pair<int, std::string>{4, "checks"});
    CHECK(parse_failure(std::string(kMinimal) + "[sweep]\nparameter = \"spin\"\nvalues = [1.0]\n").second ==
          "sweep.parameter");
    CHECK(parse_failure(std::string(kMinimal) + "[numerics]\nadm_tolerance = -1.0\n") ==
          std::pair<int, std::string>{9, "numerics.adm_tolerance"});
    CHECK(parse_failure(R"(name = "t"
dimension = 3
boundary_r0 = 2.0
checks = ["Theorem1"]
[metric]
kind = "perturbed"
mass = 1.0
[[metric.terms]]
kind = "power"
coef = 0.1
)")
              .second == "metric.terms[0].exponent");
  }
  SUBCASE("shipped malformed file") {
    try {
      load_scenario(kData + "/malformed.toml");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 8);
      CHECK(e.field() == "metric.mass");
    }
  }
  SUBCASE("sweep expansion") {
    const Scenario sw = load_scenario(kScenarios + "/sweep_r0.toml");
    const std::vector<Scenario> pts = sw.expand();
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].boundary_r0 == 1.5);
    CHECK(pts[3].boundary_r0 == 5.0);
    CHECK_FALSE(pts[2].sweep.has_value());
    const std::vector<std::string> p = sweepable_parameters();
    CHECK(std::set<std::string>(p.begin(), p.end()).count("metric.mass") == 1);
  }
}

TEST_CASE("shipped scenarios") {
  SUBCASE("Schwarzschild exterior: every mass-capacity verdict is equality") {
    const Report r = run_scenario_file(kScenarios + "/schwarzschild_n3.toml");
    REQUIRE(r.points.size() == 1);
    CHECK_FALSE(r.has_failure());
    for (const CheckRecord& c : r.points[0].checks) {
      CHECK(c.status == CheckStatus::kPass);
      if (c.check == CheckKind::kAppendixA) CHECK(c.verdict == "HoldsStrict");  // c = 9 > 1: R̃ > 0
      else CHECK(c.verdict == "HoldsWithEquality");
    }
    CHECK(r.points[0].summary.capacity == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.points[0].summary.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("Euclidean: hypotheses violated, no failure") {
    const Report r = run_scenario_file(kScenarios + "/euclidean.toml");
    CHECK_FALSE(r.has_failure());
    CHECK(r.points[0].checks[0].status == CheckStatus::kHypothesisViolated);
    CHECK(r.points[0].checks[0].note == "c <= 1");
  }
  SUBCASE("perturbed: strict") {
    const Report r = run_scenario_file(kScenarios + "/perturbed.toml");
    CHECK_FALSE(r.has_failure());
    CHECK(r.points[0].summary.verdict == "HoldsStrict");
    CHECK(r.points[0].summary.gap > 0.0);
  }
  SUBCASE("sweep over r0: four equality records") {
    const Report r = run_scenario_file(kScenarios + "/sweep_r0.toml", {4, false});
    REQUIRE(r.points.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(r.points[i].index == i);
      CHECK(r.points[i].summary.verdict == "HoldsWithEquality");
    }
  }
  SUBCASE("failed assertion becomes a Fail record") {
    const Report r = run_scenario_file(kData + "/check_failure.toml");
    CHECK(r.has_failure());
    CHECK(r.points[0].checks[0].note.find("disagree") != std::string::npos);
  }
}

TEST_CASE("report serialisation") {
  const Report r = run_scenario_file(kScenarios + "/sweep_r0.toml");

  SUBCASE("json round trip and determinism") {
    const std::string json = emit(r, ReportFormat::kJson);
    CHECK(report_from_json(json) == r);
    CHECK(emit(report_from_json(json), ReportFormat::kJson) == json);
    CHECK(emit(run_scenario_file(kScenarios + "/sweep_r0.toml", {3, false}), ReportFormat::kJson) == json);
    CHECK(json.find("timing") == std::string::npos);
    const Report timed = run_scenario_file(kScenarios + "/sweep_r0.toml", {1, true});
    REQUIRE(timed.wall_time_seconds.has_value());
    CHECK(report_from_json(emit(timed, ReportFormat::kJson)).wall_time_seconds == timed.wall_time_seconds);
  }
  SUBCASE("non-finite values become null") {
    Report n = r;
    n.points[0].summary.gap = std::nan("");
    n.points[0].checks[0].values["probe"] = real(INFINITY);
    const std::string json = emit(n, ReportFormat::kJson);
    CHECK(json.find("\"gap\": null") != std::string::npos);
    CHECK(std::isnan(report_from_json(json).points[0].summary.gap));
  }
  SUBCASE("csv") {
    std::istringstream in(emit(r, ReportFormat::kCsv));
    std::string line;
    std::getline(in, line);
    CHECK(line == "name,n,m,r0,capacity,mass,Lambda,c,alpha,rhs,gap,verdict");
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      CHECK(line.rfind("sweep_r0,3,2,", 0) == 0);
      CHECK(std::count(line.begin(), line.end(), ',') == 11);
    }
    CHECK(rows == 4);
  }
  SUBCASE("text: one line per check") {
    std::istringstream in(emit(r, ReportFormat::kText));
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
      ++lines;
      CHECK(line.rfind("PASS ", 0) == 0);
    }
    CHECK(lines == 8);
    const Report failing = run_scenario_file(kData + "/check_failure.toml");
    CHECK(emit(failing, ReportFormat::kText).rfind("FAIL check_failure[0] Theorem1", 0) == 0);
  }
  SUBCASE("format names") {
    CHECK(report_format_from_string("csv") == ReportFormat::kCsv);
    CHECK_FALSE(report_format_from_string("xml").has_value());
    CHECK(extension(ReportFormat::kText) == "txt");
    CHECK_THROWS_AS(report_from_json("{\"scenario\": 1}"), ParseError);
  }
}
