#include <doctest.h>

#include "metarate/corpus.hpp"
#include "metarate/scenario.hpp"

using namespace metarate;

namespace {

const char* kKmScenario = R"({
  "scenarios": [
    {
      "id": "km-example",
      "theorem": "km",
      "f": [["0", "1", "1", "1"], ["1", "1", "0", "1"]],
      "x0": "0/1",
      "epsilon": "1/2",
      "g": {"kind": "constant", "value": "1"},
      "t": {"kind": "harmonic"},
      "omega": {"kind": "linear", "slope": "1"},
      "beta": {"kind": "harmonic"}
    }
  ]
})";

}  // namespace

TEST_CASE("parse a km scenario") {
  const auto scenarios = parse_scenarios(kKmScenario);
  REQUIRE(scenarios.size() == 1);
  const Scenario& sc = scenarios[0];
  CHECK(sc.id == "km-example");
  CHECK(sc.theorem == Theorem::km);
  CHECK(sc.f.points().size() == 2);
  CHECK(sc.f.eval(UnitRational(1, 4)) == UnitRational(3, 4));
  CHECK(sc.epsilon == PosRational(1, 2));
  CHECK(sc.g(Nat(10)) == Nat(1));
  CHECK(sc.omega->slope() == PosRational(1, 1));
  CHECK(!sc.s.has_value());
  CHECK(!sc.delta.has_value());
}

TEST_CASE("canonical round trip is byte identical") {
  const auto scenarios = parse_scenarios(kKmScenario);
  const std::string once = serialize_scenarios(scenarios);
  const std::string twice = serialize_scenarios(parse_scenarios(once));
  CHECK(once == twice);
}

TEST_CASE("corpus files round trip across every theorem") {
  for (Theorem theorem : {Theorem::fmcp, Theorem::km, Theorem::ishikawa,
                          Theorem::lipschitz}) {
    const auto corpus = generate_corpus(7, 5, theorem);
    const std::string once = serialize_scenarios(corpus);
    const std::string twice = serialize_scenarios(parse_scenarios(once));
    CHECK(once == twice);
  }
}

TEST_CASE("parse diagnostics carry the field path") {
  CHECK_THROWS_WITH_AS(parse_scenarios("{}"), "$: missing field 'scenarios'",
                       DomainError);
  CHECK_THROWS_AS(parse_scenarios("not json"), DomainError);

  // Missing required field for the theorem.
  const char* missing_beta = R"({
    "scenarios": [{
      "id": "x", "theorem": "km",
      "f": [["0","1","0","1"],["1","1","1","1"]],
      "x0": "0/1", "epsilon": "1/2",
      "g": {"kind": "identity"},
      "t": {"kind": "harmonic"},
      "omega": {"kind": "linear", "slope": "1"}
    }]
  })";
  CHECK_THROWS_WITH_AS(parse_scenarios(missing_beta),
                       "$.scenarios[0]: theorem 'km' requires field 'beta'",
                       DomainError);

  // Field not used by the theorem.
  const char* stray_delta = R"({
    "scenarios": [{
      "id": "x", "theorem": "fmcp",
      "f": [["0","1","0","1"],["1","1","1","1"]],
      "x0": "0/1", "epsilon": "1/2",
      "g": {"kind": "identity"},
      "t": {"kind": "harmonic"},
      "delta": "1/2"
    }]
  })";
  CHECK_THROWS_AS(parse_scenarios(stray_delta), DomainError);

  // Bad rational.
  const char* bad_eps = R"({
    "scenarios": [{
      "id": "x", "theorem": "fmcp",
      "f": [["0","1","0","1"],["1","1","1","1"]],
      "x0": "0/1", "epsilon": "0/2",
      "g": {"kind": "identity"},
      "t": {"kind": "harmonic"}
    }]
  })";
  CHECK_THROWS_AS(parse_scenarios(bad_eps), DomainError);

  // Duplicate ids.
  const char* dup = R"({
    "scenarios": [
      {"id": "a", "theorem": "fmcp",
       "f": [["0","1","0","1"],["1","1","1","1"]],
       "x0": "0/1", "epsilon": "1/2",
       "g": {"kind": "identity"}, "t": {"kind": "harmonic"}},
      {"id": "a", "theorem": "fmcp",
       "f": [["0","1","0","1"],["1","1","1","1"]],
       "x0": "0/1", "epsilon": "1/2",
       "g": {"kind": "identity"}, "t": {"kind": "harmonic"}}
    ]
  })";
  CHECK_THROWS_WITH_AS(parse_scenarios(dup), "duplicate scenario id: a",
                       DomainError);
}

TEST_CASE("lipschitz delta must lie in (0,1)") {
  const char* bad_delta = R"({
    "scenarios": [{
      "id": "x", "theorem": "lipschitz",
      "f": [["0","1","0","1"],["1","1","1","1"]],
      "x0": "0/1", "epsilon": "1/2",
      "g": {"kind": "identity"},
      "t": {"kind": "constant", "value": "1/2"},
      "delta": "3/2"
    }]
  })";
  CHECK_THROWS_AS(parse_scenarios(bad_delta), DomainError);
}

TEST_CASE("caps patch parses and applies") {
  const char* with_caps = R"({
    "scenarios": [{
      "id": "x", "theorem": "fmcp",
      "f": [["0","1","0","1"],["1","1","1","1"]],
      "x0": "0/1", "epsilon": "1/2",
      "g": {"kind": "identity"},
      "t": {"kind": "harmonic"},
      "caps": {"nat_bits": 128, "horizon": 1000}
    }]
  })";
  const auto scenarios = parse_scenarios(with_caps);
  REQUIRE(scenarios[0].caps.has_value());
  Caps base;
  const Caps merged = scenarios[0].caps->apply(base);
  CHECK(merged.nat_bits == 128);
  CHECK(merged.horizon == 1000);
  CHECK(merged.search == base.search);
}

TEST_CASE("run serialization uses exact rational strings") {
  const Caps caps;
  const IterationRun run = run_iteration(
      Scheme::km,
      PwlFunction({{UnitRational::zero(), UnitRational::one()},
                   {UnitRational::one(), UnitRational::zero()}}),
      ParamSchedule::constant(UnitRational(1, 2)), std::nullopt,
      UnitRational::zero(), 3, caps);
  const std::string json = run_to_json(run);
  CHECK(json.find("\"scheme\": \"km\"") != std::string::npos);
  CHECK(json.find("\"0/1\"") != std::string::npos);
  CHECK(json.find("\"1/2\"") != std::string::npos);
}

TEST_CASE("report serialization and plot csv") {
  Report report;
  ScenarioResult sound;
  sound.id = "a";
  sound.theorem = Theorem::km;
  sound.outcome = Outcome::sound;
  sound.epsilon = PosRational(1, 2);
  sound.bound = Nat(336);
  sound.least_n = 0;
  report.results.push_back(sound);

  ScenarioResult zero_bound;
  zero_bound.id = "b";
  zero_bound.theorem = Theorem::lipschitz;
  zero_bound.outcome = Outcome::sound;
  zero_bound.epsilon = PosRational(1, 2);
  zero_bound.bound = Nat(0);
  zero_bound.least_n = 0;
  report.results.push_back(zero_bound);

  ScenarioResult skipped;
  skipped.id = "c";
  skipped.theorem = Theorem::km;
  skipped.outcome = Outcome::skipped;
  skipped.epsilon = PosRational(1, 3);
  skipped.detail = "hypothesis: modulus";
  report.results.push_back(skipped);

  const ReportSummary s = report.summary();
  CHECK(s.total == 3);
  CHECK(s.sound == 2);
  CHECK(s.skipped == 1);
  CHECK(s.sound + s.failed + s.skipped + s.bound_only == s.total);

  const std::string json = serialize_report(report);
  CHECK(json.find("\"bound\": \"336\"") != std::string::npos);
  CHECK(json.find("wall_ms") == std::string::npos);

  const std::string csv = plot_csv(report);
  CHECK(csv == "scenario,epsilon,bound,least_N,ratio\n"
               "a,1/2,336,0,0/1\n"
               "b,1/2,0,0,0/0 exact\n"
               "c,1/3,,,\n");
}

TEST_CASE("empty scenario list round trips to an empty report") {
  const auto scenarios = parse_scenarios(R"({"scenarios": []})");
  CHECK(scenarios.empty());
  Report report;
  CHECK(report.summary().total == 0);
  CHECK(plot_csv(report) == "scenario,epsilon,bound,least_N,ratio\n");
}
