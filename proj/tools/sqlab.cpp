// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

// sqlab: run scenario configs, reproduce acceptance criteria, and run
// single experiments from the command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sqlab/lab.hpp"

namespace {

using sqlab::lab::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sqlab::Error(sqlab::ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_summary(const sqlab::lab::ScenarioReport& r) {
  std::cerr << (r.passed ? "PASS " : "FAIL ") << r.id;
  if (r.report.contains("error")) std::cerr << "  error: " << r.report["error"].get<std::string>();
  for (const json& a : r.report.value("assertions", json::array())) {
    if (!a["passed"].get<bool>()) std::cerr << "\n    failed: " << a["name"].get<std::string>();
  }
  std::cerr << '\n';
}

// One scenario from command-line options. CSV goes to stdout unless --out
// is given, in which case both report files are written there.
int run_single(sqlab::lab::ScenarioKind kind, json params, std::uint64_t seed, const std::string& out) {
  sqlab::lab::Scenario s{sqlab::lab::to_string(kind), kind, std::move(params), seed};
  std::vector<sqlab::lab::Scenario> v{s};
  sqlab::lab::apply_seed_override(v);
  sqlab::lab::ScenarioReport r = sqlab::lab::run_scenario(v[0]);
  if (out.empty()) {
    std::cout << r.csv;
  } else {
    sqlab::lab::write_report(r, out);
  }
  print_summary(r);
  return r.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sqlab: precise-verification experiments"};
  app.set_version_flag("--version", std::string(sqlab::lab::version()));
  app.require_subcommand(1);
  int code = 0;

  std::string config, run_out, out;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "Run every scenario in a JSON config");
  run->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "Report directory")->default_val("reports");

  std::string criterion;
  bool verbose = false;
  auto* reproduce = app.add_subcommand("reproduce", "Run one acceptance criterion (AC-1..AC-10) or 'all'");
  reproduce->add_option("id", criterion)->required();
  reproduce->add_flag("-v,--verbose", verbose, "Print passing checks too");

  double c = 0.7, s = 0.4;
  int l = 6;
  std::string backend = "erf", projector = "witness-free";
  auto* amplify = app.add_subcommand("amplify", "Amplify the toy verifier");
  amplify->add_option("--c", c)->capture_default_str();
  amplify->add_option("--s", s)->capture_default_str();
  amplify->add_option("--l", l)->capture_default_str();
  amplify->add_option("--backend", backend)->check(CLI::IsMember({"erf", "chebyshev"}))->capture_default_str();
  amplify->add_option("--projector", projector)->check(CLI::IsMember({"witness-free", "all-zero"}))->capture_default_str();

  double acceptance = 0.8, delta1 = 0.1, r = 0.3, nu = 0.0;
  int T = 4, trials = 8;
  bool sweep = false;
  auto* kitaev = app.add_subcommand("kitaev", "Weighted Kitaev Hamiltonian of a planted verifier");
  kitaev->add_option("--acceptance", acceptance, "Max acceptance of the planted verifier")->capture_default_str();
  kitaev->add_option("--delta1", delta1)->capture_default_str();
  kitaev->add_option("--T", T, "Circuit length (>= 4)")->capture_default_str();
  kitaev->add_option("--r", r, "Acceptance of the orthogonal witness")->capture_default_str();
  kitaev->add_flag("--sweep", sweep, "Rerun the c0 floor sweep");
  kitaev->add_option("--trials", trials, "Instances per (T, delta1) in the sweep")->capture_default_str();

  std::vector<double> alphas{1.0, 0.99, 0.95, 0.9};
  auto* hadamard = app.add_subcommand("hadamard-test", "Hadamard-test verifier on a planted Hamiltonian");
  hadamard->add_option("--nu", nu)->capture_default_str();
  hadamard->add_option("--delta1", delta1)->capture_default_str();
  hadamard->add_option("--T", T)->capture_default_str();
  hadamard->add_option("--alphas", alphas, "Overlaps with the ground state")->expected(1, -1)->delimiter(',');

  std::string circuit_file;
  std::vector<std::string> ks;
  std::size_t witness = 0;
  auto* rewind = app.add_subcommand("rewind", "Perfect-completeness rewinding");
  rewind->add_option("--circuit", circuit_file, "Circuit JSON (random if omitted)")->check(CLI::ExistingFile);
  rewind->add_option("--k", ks, "Claimed numerators (decimal, any size)")->expected(1, -1)->delimiter(',');
  rewind->add_option("--witness", witness, "Classical witness index")->capture_default_str();

  double delta = 0.1, epsilon = 1e-3;
  auto* signpoly = app.add_subcommand("signpoly", "Sign-approximating polynomial");
  signpoly->add_option("--delta", delta)->capture_default_str();
  signpoly->add_option("--epsilon", epsilon)->capture_default_str();
  signpoly->add_option("--backend", backend)->check(CLI::IsMember({"erf", "chebyshev"}))->capture_default_str();

  std::string demo;
  int p = 8;
  std::uint64_t demo_seed = 2024;
  auto* demo_cmd = app.add_subcommand("demo", "Composition demos");
  demo_cmd->add_option("name", demo)->required()->check(CLI::IsMember({"stateqma-log-collapse", "precise-pipeline"}));
  demo_cmd->add_option("--p", p, "Amplification exponent")->capture_default_str();

  for (CLI::App* sub : {amplify, kitaev, hadamard, rewind, signpoly}) {
    sub->add_option("--seed", seed)->capture_default_str();
    sub->add_option("--out", out, "Write <kind>.json and <kind>.csv here instead of CSV to stdout");
  }
  demo_cmd->add_option("--seed", demo_seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  using sqlab::lab::ScenarioKind;
  try {
    if (*run) {
      auto scenarios = sqlab::lab::parse_config(read_file(config));
      sqlab::lab::apply_seed_override(scenarios);
      for (const auto& rep : sqlab::lab::run_scenarios(scenarios)) {
        sqlab::lab::write_report(rep, run_out);
        print_summary(rep);
        if (!rep.passed) code = 1;
      }
    } else if (*reproduce) {
      std::vector<std::string> ids{criterion};
      if (criterion == "all") ids = sqlab::lab::criterion_ids();
      for (const std::string& id : ids) {
        auto res = sqlab::lab::run_criterion(id);
        std::cout << sqlab::lab::format_criterion(res, verbose) << std::endl;
        if (!res.passed()) {
          if (!verbose) std::cout << sqlab::lab::format_failures(res).substr(res.id.size() + 1) << std::endl;
          code = 1;
        }
      }
    } else if (*amplify) {
      code = run_single(ScenarioKind::Amplify,
                        {{"c", c}, {"s", s}, {"l", l}, {"backend", backend}, {"projector", projector}}, seed, out);
    } else if (*kitaev) {
      code = run_single(ScenarioKind::Kitaev,
                        {{"acceptance", acceptance}, {"delta1", delta1}, {"T", T}, {"r", r}, {"sweep", sweep},
                         {"trials", trials}},
                        seed, out);
    } else if (*hadamard) {
      code = run_single(ScenarioKind::HadamardTest, {{"nu", nu}, {"delta1", delta1}, {"T", T}, {"alphas", alphas}},
                        seed, out);
    } else if (*rewind) {
      json params = {{"witness", witness}};
      if (!circuit_file.empty()) params["circuit"] = json::parse(read_file(circuit_file));
      if (!ks.empty()) params["k"] = ks;
      code = run_single(ScenarioKind::Rewind, params, seed, out);
    } else if (*signpoly) {
      code = run_single(ScenarioKind::Signpoly, {{"delta", delta}, {"epsilon", epsilon}, {"backend", backend}}, seed,
                        out);
    } else if (*demo_cmd) {
      json res = sqlab::lab::compose_demo(demo, p, demo_seed);
      std::cout << res.dump(2) << '\n';
      code = res.value("passed", false) ? 0 : 1;
    }
  } catch (const sqlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: parse: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return code;
}
