// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "sqlab/lab.hpp"

namespace sqlab::lab {
namespace {

std::string parse_message(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    return e.what();
  }
  ADD_FAILURE() << "no error for: " << text;
  return "";
}

Scenario scenario(const std::string& kind, json params, std::uint64_t seed = 1) {
  Scenario s;
  s.id = kind;
  s.kind = scenario_kind_from_string(kind);
  s.params = std::move(params);
  s.seed = seed;
  return s;
}

TEST(Config, ParsesScenarios) {
  auto s = parse_config(R"({"scenarios": [
    {"id": "a", "kind": "signpoly", "seed": 3, "params": {"delta": 0.2}},
    {"id": "b", "kind": "rewind"}]})");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].seed, 3u);
  EXPECT_EQ(s[0].params["delta"], 0.2);
  EXPECT_EQ(s[1].kind, ScenarioKind::Rewind);
}

TEST(Config, ErrorsNameTheLocation) {
  EXPECT_NE(parse_message("{\n\"scenarios\": [\n{,}]}").find("line 3"), std::string::npos);
  EXPECT_NE(parse_message(R"({"scenarios": [{"id": "a", "kind": "nope"}]})").find("scenarios[0].kind"),
            std::string::npos);
  EXPECT_NE(parse_message(R"({"scenarios": [{"id": "a", "kind": "audit"}, {"id": "a", "kind": "audit"}]})")
                .find("duplicate"),
            std::string::npos);
  EXPECT_NE(parse_message(R"({"scenarios": [{"id": "a", "kind": "audit", "seed": -1}]})").find("scenarios[0].seed"),
            std::string::npos);
  parse_message(R"({"runs": []})");
}

TEST(Config, BadParamTypeIsParseError) {
  try {
    run_scenario(scenario("signpoly", {{"delta", "wide"}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("params.delta"), std::string::npos);
  }
}

TEST(Config, SeedOverride) {
  auto s = parse_config(R"({"scenarios": [{"id": "a", "kind": "audit", "seed": 3}]})");
  ::setenv("SQLAB_SEED", "99", 1);
  apply_seed_override(s);
  EXPECT_EQ(s[0].seed, 99u);
  ::setenv("SQLAB_SEED", "x", 1);
  EXPECT_THROW(apply_seed_override(s), Error);
  ::unsetenv("SQLAB_SEED");
  apply_seed_override(s);
  EXPECT_EQ(s[0].seed, 99u);
}

TEST(CircuitJson, RoundTrip) {
  Rng rng(4);
  Circuit c = random_circuit(3, 10, rng);
  c.add(gates::pyth_i(2));
  c.set_output_qubit(1);
  Circuit back = circuit_from_json(circuit_to_json(c));
  EXPECT_EQ(back.size(), c.size());
  EXPECT_EQ(back.output_qubit(), 1);
  EXPECT_TRUE(unitary_of(back).isApprox(unitary_of(c), 1e-14));
  EXPECT_THROW(circuit_from_json(json{{"qubits", 1}, {"gates", {{{"kind", "H"}, {"targets", {4}}}}}}), Error);
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(fmt(0.1), "0.1");
  EXPECT_EQ(std::stod(fmt(1.0 / 3)), 1.0 / 3);
}

class EachKind : public ::testing::TestWithParam<std::pair<const char*, const char*>> {};

TEST_P(EachKind, PassesAndIsDeterministic) {
  auto [kind, params] = GetParam();
  Scenario s = scenario(kind, json::parse(params), 7);
  ScenarioReport a = run_scenario(s), b = run_scenario(s);
  EXPECT_TRUE(a.passed) << a.report.dump(2);
  EXPECT_FALSE(a.csv.empty());
  EXPECT_EQ(a.csv, b.csv);
  EXPECT_TRUE(a.report.contains("runtime_ms"));
  EXPECT_EQ(a.report["seed"], 7);
}

INSTANTIATE_TEST_SUITE_P(
    Kinds, EachKind,
    ::testing::Values(std::pair{"signpoly", R"({"delta": 0.2, "epsilon": 1e-3, "grid": 201})"},
                      std::pair{"amplify", R"({"c": 0.7, "s": 0.4, "l": 4})"},
                      std::pair{"kitaev", R"({"acceptance": 0.8, "T": 4})"},
                      std::pair{"hadamard-test", R"({"alphas": [1.0, 0.99]})"},
                      std::pair{"rewind", R"({"k": [16, "20"], "circuit": {"qubits": 2, "output": 1, "gates": [
                        {"kind": "X", "targets": [1]}, {"kind": "PYTH_R", "targets": [1]}]}})"},
                      std::pair{"audit", R"({"random_witnesses": 40})"}));

TEST(Scenario, RuntimeErrorsLandInReport) {
  ScenarioReport r = run_scenario(scenario("amplify", {{"c", 0.5}, {"s", 0.4999}}));
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.report.contains("error"));
}

TEST(Scenario, ConcurrentRunsSortedById) {
  Scenario a = scenario("signpoly", {{"grid", 51}}), b = a;
  a.id = "zeta";
  b.id = "alpha";
  auto out = run_scenarios({a, b});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].id, "alpha");
  EXPECT_EQ(out[0].csv, out[1].csv);
}

TEST(Scenario, WriteReportFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "sqlab_test_reports";
  std::filesystem::remove_all(dir);
  ScenarioReport r = run_scenario(scenario("signpoly", {{"grid", 21}}));
  write_report(r, dir.string());
  std::ifstream js(dir / "signpoly.json"), csv(dir / "signpoly.csv");
  ASSERT_TRUE(js && csv);
  EXPECT_EQ(json::parse(js)["id"], "signpoly");
  std::stringstream ss;
  ss << csv.rdbuf();
  EXPECT_EQ(ss.str(), r.csv);
  std::filesystem::remove_all(dir);
}

TEST(Criteria, RegistryAndUnknownId) {
  auto ids = criterion_ids();
  ASSERT_EQ(ids.size(), 10u);
  EXPECT_EQ(ids.front(), "AC-1");
  EXPECT_THROW(run_criterion("AC-11"), Error);
  CriterionResult r = run_criterion("AC-1");
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(format_criterion(r, false).rfind("PASS AC-1", 0), 0u);
}

TEST(Demo, LogCollapse) {
  json d = compose_demo("stateqma-log-collapse", 4);
  EXPECT_TRUE(d["passed"].get<bool>()) << d.dump(2);
}

TEST(Demo, PrecisePipeline) {
  json d = compose_demo("precise-pipeline", 4);
  EXPECT_TRUE(d["passed"].get<bool>()) << d.dump(2);
}

TEST(Demo, RejectsUnknownAndRange) {
  EXPECT_THROW(compose_demo("nope"), Error);
  EXPECT_THROW(compose_demo("precise-pipeline", 21), Error);
}

}  // namespace
}  // namespace sqlab::lab
