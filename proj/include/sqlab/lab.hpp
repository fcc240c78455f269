// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

// Experiment runner: scenario configs, reports, the acceptance registry
// and the composition demos.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqlab/circuits.hpp"
#include "sqlab/rewinding.hpp"

namespace sqlab::lab {

using json = nlohmann::json;

const char* version();

// Circuit JSON: {"qubits": n, "output": o, "gates": [{"kind": "H",
// "targets": [0], "controls": [], "values": [], "matrix": [[re, im], ...]}]}.
// "matrix" is only written for Custom / Controlled gates (row-major).
json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

// Shortest round-trip decimal form.
std::string fmt(double x);

enum class ScenarioKind { Amplify, Kitaev, HadamardTest, Rewind, Audit, Signpoly };
const char* to_string(ScenarioKind k);
ScenarioKind scenario_kind_from_string(const std::string& s);

struct Scenario {
  std::string id;
  ScenarioKind kind = ScenarioKind::Signpoly;
  json params = json::object();
  std::uint64_t seed = 0;
};

// {"scenarios": [{"id": ..., "kind": ..., "seed": ..., "params": {...}}]}.
// Throws Parse with the line of a syntax error or the path of a bad field.
std::vector<Scenario> parse_config(const std::string& text);

// The SQLAB_SEED environment variable, when set, replaces every seed.
void apply_seed_override(std::vector<Scenario>& scenarios);

struct ScenarioReport {
  std::string id;
  bool passed = false;
  json report;      // includes version, seed and runtime_ms
  std::string csv;  // deterministic: no timings
};

ScenarioReport run_scenario(const Scenario& s);
// Runs concurrently, returns reports sorted by id.
std::vector<ScenarioReport> run_scenarios(const std::vector<Scenario>& scenarios);
// Writes <dir>/<id>.json and <dir>/<id>.csv.
void write_report(const ScenarioReport& r, const std::string& dir);

struct Check {
  std::string name;
  std::string expected;
  std::string computed;
  std::string tolerance;
  bool passed = false;
};

struct CriterionResult {
  std::string id;
  std::string title;
  std::vector<Check> checks;
  double runtime_s = 0.0;
  bool passed() const;
};

std::vector<std::string> criterion_ids();
// Throws InvalidArgument listing the valid ids.
CriterionResult run_criterion(const std::string& id);
// One PASS/FAIL line; `verbose` appends every check.
std::string format_criterion(const CriterionResult& r, bool verbose);
// The id followed by the failing checks, one per line.
std::string format_failures(const CriterionResult& r);

// "stateqma-log-collapse" or "precise-pipeline"; p is the amplification
// exponent (p = 0 skips amplification).
json compose_demo(const std::string& name, int p = 8, std::uint64_t seed = 2024);

}  // namespace sqlab::lab
