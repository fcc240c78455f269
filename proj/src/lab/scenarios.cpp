// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "sqlab/lab.hpp"
#include "sqlab/linalg.hpp"
#include "sqlab/qsvt.hpp"
#include "sqlab/uqma.hpp"

namespace sqlab::lab {
namespace {

constexpr ScenarioKind kAllKinds[] = {ScenarioKind::Amplify, ScenarioKind::Kitaev, ScenarioKind::HadamardTest,
                                      ScenarioKind::Rewind,  ScenarioKind::Audit,  ScenarioKind::Signpoly};

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { row(std::move(header)); }
  void row(std::vector<std::string> cells) {
    if (cells.size() != width_) throw Error(ErrorKind::InvalidState, "CSV row width");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  std::size_t width_;
  std::ostringstream out_;
};

std::string b(bool v) { return v ? "true" : "false"; }

// Typed parameter lookup with the field path in the error message.
class Params {
 public:
  Params(const Scenario& s) : s_(s) {}
  template <class T>
  T get(const std::string& key, T fallback) const {
    if (!s_.params.contains(key)) return fallback;
    try {
      return s_.params.at(key).get<T>();
    } catch (const json::exception&) {
      throw Error(ErrorKind::Parse, "scenario '" + s_.id + "': params." + key + " has the wrong type");
    }
  }
  bool has(const std::string& key) const { return s_.params.contains(key); }
  const json& raw(const std::string& key) const { return s_.params.at(key); }

 private:
  const Scenario& s_;
};

struct Outcome {
  json results = json::object();
  json assertions = json::array();
  std::string csv;
  void assert_that(const std::string& name, bool ok) { assertions.push_back({{"name", name}, {"passed", ok}}); }
  bool passed() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const json& a) { return a["passed"].get<bool>(); });
  }
};

PolyBackend backend_of(const std::string& s) {
  if (s == "erf") return PolyBackend::Erf;
  if (s == "chebyshev") return PolyBackend::Chebyshev;
  throw Error(ErrorKind::Parse, "backend must be 'erf' or 'chebyshev', got '" + s + "'");
}

InputProjector projector_of(const std::string& s) {
  if (s == "witness-free") return InputProjector::WitnessFree;
  if (s == "all-zero") return InputProjector::AllZero;
  throw Error(ErrorKind::Parse, "projector must be 'witness-free' or 'all-zero', got '" + s + "'");
}

Outcome run_signpoly(const Params& p) {
  const double delta = p.get("delta", 0.1);
  const double eps = p.get("epsilon", 1e-3);
  const PolyBackend backend = backend_of(p.get<std::string>("backend", "erf"));
  const int grid = p.get("grid", 2001);
  SignPolynomial poly = backend == PolyBackend::Erf ? approx_sign_erf(delta, eps) : approx_sign_chebyshev(eps);
  Outcome o;
  Csv csv({"x", "p", "outside_gap", "abs_error"});
  double peak = 0.0, worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = -1.0 + 2.0 * i / (grid - 1);
    const double v = poly(x);
    const bool outside = std::abs(x) >= poly.delta;
    const double err = outside ? std::abs(v - (x > 0 ? 1.0 : -1.0)) : 0.0;
    peak = std::max(peak, std::abs(v));
    worst = std::max(worst, err);
    csv.row({fmt(x), fmt(v), b(outside), outside ? fmt(err) : ""});
  }
  RVec c = poly.chebyshev();
  double even = 0.0;
  for (Eigen::Index i = 0; i < c.size(); i += 2) even = std::max(even, std::abs(c(i)));
  o.results = {{"backend", to_string(backend)}, {"degree", poly.degree}, {"delta", poly.delta},
               {"epsilon", poly.epsilon}, {"coefficient_l1", poly.coefficient_l1()}, {"max_abs", peak},
               {"max_error_outside", worst}, {"max_even_coefficient", even}};
  o.assert_that("bounded by 1", peak <= 1.0 + 1e-12);
  o.assert_that("error outside the gap <= epsilon", worst <= eps);
  o.assert_that("odd", even <= 1e-12);
  o.csv = csv.str();
  return o;
}

Outcome run_amplify(const Params& p) {
  const double c = p.get("c", 0.7);
  const double s = p.get("s", 0.4);
  const int l = p.get("l", 6);
  const int m = p.get("witness_qubits", 1);
  const PolyBackend backend = backend_of(p.get<std::string>("backend", "erf"));
  const InputProjector proj = projector_of(p.get<std::string>("projector", "witness-free"));
  VerifierSpec toy = toy_verifier(c, s, m);
  Amplified amp = amplify_verifier(toy, l, proj, backend);
  const double eps = std::ldexp(1.0, -l);

  Outcome o;
  Csv csv({"witness", "acceptance_before", "acceptance_after", "td_before_after"});
  double completeness = 0.0, soundness = 0.0, td0 = 1.0;
  for (std::size_t j = 0; j < (std::size_t{1} << m); ++j) {
    PureState w = PureState::basis(m, j);
    const double before = acceptance_probability(toy, w);
    const double after = acceptance_probability(amp.verifier, w);
    std::string td;
    if (after > 1e-12) {
      const double d = trace_distance(resulting_state(toy, w), resulting_state(amp.verifier, w));
      td = fmt(d);
      if (j == 0) td0 = d;
    }
    if (j == 0) completeness = after;
    else soundness = std::max(soundness, after);
    csv.row({std::to_string(j), fmt(before), fmt(after), td});
  }
  const int d = amp.repetitions;
  const double k = d * (std::sqrt(c) - std::sqrt(s)) / l;
  o.results = {{"c", c}, {"s", s}, {"l", l}, {"backend", to_string(backend)}, {"projector", to_string(proj)},
               {"degree", d}, {"phase_residual", amp.phases.residual}, {"completeness", completeness},
               {"soundness", soundness}, {"td_optimal", td0}, {"repetition_constant", k}};
  o.assert_that("completeness >= 1 - 2^-l", completeness >= 1.0 - eps);
  o.assert_that("soundness <= 2^-l", soundness <= eps);
  o.assert_that("resulting-state td <= 2^(1-l)", td0 <= 2.0 * eps);
  o.csv = csv.str();
  return o;
}

PureState planted_witness(Rng& rng) { return random_pure_state(1, rng); }

Outcome run_kitaev(const Params& p, std::uint64_t seed) {
  Outcome o;
  if (p.get("sweep", false)) {
    GapSweep sw = sweep_gap_constant(seed, p.get("trials", 8));
    Csv csv({"T", "delta1", "trial", "nu", "gap", "c0"});
    for (const SweepRow& r : sw.rows) {
      csv.row({std::to_string(r.T), fmt(r.delta1), std::to_string(r.trial), fmt(r.nu), fmt(r.gap), fmt(r.c0)});
    }
    o.results = {{"instances", sw.rows.size()}, {"min_c0", sw.min_c0}, {"floor", kGapConstantFloor}};
    o.assert_that("min c0 >= recorded floor", sw.min_c0 >= kGapConstantFloor);
    o.csv = csv.str();
    return o;
  }
  Rng rng(seed);
  const double acc = p.get("acceptance", 0.8);
  const double delta1 = p.get("delta1", 0.1);
  const int T = p.get("T", 4);
  const double r = p.get("r", 0.3);
  if (T < 4) throw Error(ErrorKind::InvalidArgument, "planted verifiers have T >= 4");
  PureState w = planted_witness(rng);
  VerifierSpec v = planted_verifier(w, 1.0 - acc, r, T - 4);
  WeightedKitaevHamiltonian h = build_weighted_kitaev(v, delta1);
  GapReport g = verify_gap_bound(h);
  HermitianEig e = hermitian_eig(h.h);
  const double fid = std::norm(e.vectors.col(0).dot(history_state(v, w, h.chain.pi)));
  Csv csv({"T", "delta1", "nu", "lambda0", "lambda1", "gap", "path_gap", "gap_bound", "c0", "history_fidelity"});
  csv.row({std::to_string(h.T), fmt(delta1), fmt(h.nu), fmt(g.lambda0), fmt(g.lambda1), fmt(g.gap), fmt(g.path_gap),
           fmt(g.gap_bound), g.c0 ? fmt(*g.c0) : "", fmt(fid)});
  o.results = {{"T", h.T}, {"delta1", delta1}, {"nu", h.nu}, {"lambda0", g.lambda0}, {"lambda1", g.lambda1},
               {"gap", g.gap}, {"path_gap", g.path_gap}, {"gap_bound", g.gap_bound},
               {"history_fidelity", fid}, {"floor", kGapConstantFloor}};
  if (g.c0) o.results["c0"] = *g.c0;
  o.assert_that("gap >= path-gap bound", g.gap_bound_holds);
  o.assert_that("c0 >= recorded floor", g.floor_ok);
  o.csv = csv.str();
  return o;
}

Outcome run_hadamard(const Params& p, std::uint64_t seed) {
  Rng rng(seed);
  const double nu = p.get("nu", 0.0);
  const double delta1 = p.get("delta1", 0.1);
  const int T = p.get("T", 4);
  const double r = p.get("r", 0.3);
  const auto alphas = p.get("alphas", std::vector<double>{1.0, 0.99, 0.95, 0.9});
  PureState w = planted_witness(rng);
  VerifierSpec v = planted_verifier(w, nu, r, T - 4);
  WeightedKitaevHamiltonian h = build_weighted_kitaev(v, delta1);
  HadamardTestVerifier ht = build_hadamard_test_verifier(h, v, w);
  GapFormula g = completeness_soundness_gap(ht);

  Outcome o;
  Csv csv({"T", "delta1", "lambda0", "lambda1", "t", "c_prime", "s_prime", "gap", "alpha0", "acceptance", "f2", "f2_lower",
           "td", "bound"});
  bool acc_ok = true, state_ok = true, f2_ok = true, fvdg_ok = true;
  for (double a : alphas) {
    CertificateReport c = soundness_certificate(ht, a);
    acc_ok = acc_ok && std::abs(c.acceptance - c.acceptance_formula) <= 1e-8;
    state_ok = state_ok && c.formula_td <= 1e-8;
    f2_ok = f2_ok && c.f2_bound_holds;
    fvdg_ok = fvdg_ok && c.td_fvdg_holds;
    csv.row({std::to_string(T), fmt(delta1), fmt(ht.lambda0()), fmt(ht.lambda1()), fmt(ht.t), fmt(g.c_prime),
             fmt(g.s_prime), fmt(g.gap), fmt(a), fmt(c.acceptance), fmt(c.f2), fmt(c.f2_lower), fmt(c.td),
             fmt(2.0 * c.delta_prime)});
  }
  o.results = {{"T", T}, {"delta1", delta1}, {"nu", h.nu}, {"lambda0", ht.lambda0()}, {"lambda1", ht.lambda1()},
               {"t", ht.t}, {"c_prime", g.c_prime}, {"s_prime", g.s_prime}, {"gap", g.gap},
               {"product", g.product}, {"quarter_match", g.quarter_match}};
  o.assert_that("acceptance matches the eigen-expansion", acc_ok);
  o.assert_that("resulting state matches the closed form", state_ok);
  o.assert_that("fidelity lower bound", f2_ok);
  o.assert_that("td <= sqrt(1 - F^2 lower bound)", fvdg_ok);
  o.assert_that("gap = product / 4", g.quarter_match);
  o.csv = csv.str();
  return o;
}

VerifierSpec rewind_base(const Params& p, Rng& rng) {
  Circuit c(1);
  if (p.has("circuit")) {
    c = circuit_from_json(p.raw("circuit"));
  } else {
    const int n = p.get("qubits", 2);
    c = random_pythagorean_circuit(n, p.get("pythagorean", 1), p.get("other", 3), rng);
    c.set_output_qubit(n - 1);
  }
  VerifierSpec v;
  v.witness_qubits = p.get("witness_qubits", 1);
  v.ancilla_qubits = c.num_qubits() - v.witness_qubits;
  v.circuit = std::move(c);
  v.completeness = p.get("c", 0.5);
  v.soundness = p.get("s", 0.25);
  v.validate();
  return v;
}

Outcome run_rewind(const Params& p, std::uint64_t seed) {
  Rng rng(seed);
  VerifierSpec v = rewind_base(p, rng);
  const std::size_t witness = p.get<std::size_t>("witness", 0);
  const int l = v.circuit.pythagorean_count();
  const mpz_class denom = acceptance_denominator(l);
  ExactRewinding probe = exact_rewinding(v, witness, 1);
  std::vector<mpz_class> ks;
  if (p.has("k")) {
    for (const json& k : p.raw("k")) {
      const std::string txt = k.is_string() ? k.get<std::string>() : k.is_number_integer() ? k.dump() : "";
      mpz_class z;
      if (txt.empty() || z.set_str(txt, 10) != 0) {
        throw Error(ErrorKind::Parse, "params.k: expected integers or decimal strings, got " + k.dump());
      }
      ks.push_back(z);
    }
  } else {
    mpz_class half = (denom + 1) / 2;
    ks = {std::max(probe.k_xw, half), denom, 2 * std::max(probe.k_xw, half)};
  }

  Outcome o;
  Csv csv({"k", "k_xw", "q_exact", "q_formula", "rewound_exact", "g", "rewound_float", "fidelity", "rejected"});
  bool q_ok = true, g_ok = true, float_ok = true, state_ok = true, honest_ok = true;
  for (const mpz_class& k : ks) {
    ExactRewinding e = exact_rewinding(v, witness, k);
    const bool in_range = 2 * k >= denom;
    mpq_class qf(e.k_xw, 2 * k);
    qf.canonicalize();
    std::string gs;
    if (in_range) q_ok = q_ok && e.q_acceptance == qf;
    if (k >= e.k_xw && in_range) {
      mpq_class t(e.k_xw, k);
      t.canonicalize();
      mpq_class g = g_eval(t);
      gs = rational_to_string(g);
      g_ok = g_ok && e.rewound == g;
    }
    if (k == e.k_xw && in_range) honest_ok = honest_ok && e.rewound == 1;
    state_ok = state_ok && (e.rewound == 0 || e.state_equal);
    std::string rf, fid, rej = "";
    RewindingLayout lay{v.witness_qubits, v.num_qubits(), counter_qubits(k, l)};
    if (lay.width() <= kMaxRewindSimQubits && v.completeness >= 0.5) {
      RewindingVerifier rv = perfect_completeness_transform(v, k);
      FloatRewinding f = float_rewinding(rv, witness);
      rej = b(rv.rejects);
      rf = fmt(f.rewound);
      if (!rv.rejects) {
        fid = fmt(f.fidelity);
        float_ok = float_ok && std::abs(f.rewound - e.rewound.get_d()) <= 1e-10 &&
                   (e.rewound == 0 || f.fidelity >= 1.0 - 1e-10);
      }
    }
    csv.row({k.get_str(), e.k_xw.get_str(), rational_to_string(e.q_acceptance), in_range ? rational_to_string(qf) : "",
             rational_to_string(e.rewound), gs, rf, fid, rej});
  }
  o.results = {{"l", l}, {"denominator", denom.get_str()}, {"witness", witness},
               {"base_acceptance", rational_to_string(probe.base_acceptance)}, {"k_xw", probe.k_xw.get_str()},
               {"circuit", circuit_to_json(v.circuit)}};
  o.assert_that("Pr[Q] = k_xw / 2k", q_ok);
  o.assert_that("rewound acceptance = g(k_xw / k)", g_ok);
  o.assert_that("honest k accepted with probability 1", honest_ok);
  o.assert_that("float circuit agrees", float_ok);
  o.assert_that("resulting state preserved exactly", state_ok);
  o.csv = csv.str();
  return o;
}

Outcome run_audit(const Params& p, std::uint64_t seed) {
  Rng rng(seed);
  const int n = p.get("qubits", 2);
  const int m = p.get("witness_qubits", 1);
  Circuit c = random_circuit(n, p.get("gates", 6), rng);
  const PureState zero = PureState::zeros(n);
  const double gamma = circuit_acceptance(c, zero);
  DensityMatrix rho = circuit_resulting_state(c, zero, {});
  HermitianEig e = hermitian_eig(rho.matrix());
  PureState target = PureState::normalized(e.vectors.col(e.vectors.cols() - 1));
  const double delta = std::min(1.0, trace_distance(target, rho) + 1e-9);
  VerifierSpec v = embed_statebqp(c, target, gamma, delta, m);
  SoundnessReport r = soundness_audit(v, rng, p.get("random_witnesses", 200));
  Outcome o;
  Csv csv({"metric", "value"});
  csv.row({"gamma", fmt(gamma)});
  csv.row({"delta", fmt(delta)});
  csv.row({"singular_checked", std::to_string(r.singular_checked)});
  csv.row({"random_checked", std::to_string(r.random_checked)});
  csv.row({"random_drawn", std::to_string(r.random_drawn)});
  csv.row({"max_td", fmt(r.max_td)});
  csv.row({"violations", std::to_string(r.violations.size())});
  o.results = {{"gamma", gamma}, {"delta", delta}, {"max_td", r.max_td}, {"violations", r.violations.size()},
               {"circuit", circuit_to_json(c)}};
  o.assert_that("no soundness violations", r.passed());
  o.csv = csv.str();
  return o;
}

}  // namespace

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Amplify: return "amplify";
    case ScenarioKind::Kitaev: return "kitaev";
    case ScenarioKind::HadamardTest: return "hadamard-test";
    case ScenarioKind::Rewind: return "rewind";
    case ScenarioKind::Audit: return "audit";
    case ScenarioKind::Signpoly: return "signpoly";
  }
  return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
  for (ScenarioKind k : kAllKinds) {
    if (s == to_string(k)) return k;
  }
  throw Error(ErrorKind::Parse, "unknown scenario kind '" + s + "'");
}

std::vector<Scenario> parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const long line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("scenarios") || !doc["scenarios"].is_array()) {
    throw Error(ErrorKind::Parse, "config must be an object with a 'scenarios' array");
  }
  std::vector<Scenario> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc["scenarios"].size(); ++i) {
    const json& js = doc["scenarios"][i];
    const std::string where = "scenarios[" + std::to_string(i) + "]";
    if (!js.is_object()) throw Error(ErrorKind::Parse, where + ": expected an object");
    Scenario s;
    if (!js.contains("id") || !js["id"].is_string()) throw Error(ErrorKind::Parse, where + ".id: expected a string");
    s.id = js["id"].get<std::string>();
    if (!ids.insert(s.id).second) throw Error(ErrorKind::Parse, where + ".id: duplicate id '" + s.id + "'");
    if (!js.contains("kind") || !js["kind"].is_string()) throw Error(ErrorKind::Parse, where + ".kind: expected a string");
    try {
      s.kind = scenario_kind_from_string(js["kind"].get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, where + ".kind: " + e.what());
    }
    if (js.contains("seed")) {
      if (!js["seed"].is_number_unsigned()) throw Error(ErrorKind::Parse, where + ".seed: expected a non-negative integer");
      s.seed = js["seed"].get<std::uint64_t>();
    }
    if (js.contains("params")) {
      if (!js["params"].is_object()) throw Error(ErrorKind::Parse, where + ".params: expected an object");
      s.params = js["params"];
    }
    out.push_back(std::move(s));
  }
  return out;
}

void apply_seed_override(std::vector<Scenario>& scenarios) {
  const char* env = std::getenv("SQLAB_SEED");
  if (!env) return;
  std::uint64_t seed = 0;
  try {
    seed = std::stoull(env);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, std::string("SQLAB_SEED is not an integer: ") + env);
  }
  for (Scenario& s : scenarios) s.seed = seed;
}

ScenarioReport run_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  Params p(s);
  Outcome o;
  ScenarioReport r;
  r.id = s.id;
  r.report = {{"id", s.id}, {"kind", to_string(s.kind)}, {"seed", s.seed}, {"version", version()}, {"params", s.params}};
  try {
    switch (s.kind) {
      case ScenarioKind::Signpoly: o = run_signpoly(p); break;
      case ScenarioKind::Amplify: o = run_amplify(p); break;
      case ScenarioKind::Kitaev: o = run_kitaev(p, s.seed); break;
      case ScenarioKind::HadamardTest: o = run_hadamard(p, s.seed); break;
      case ScenarioKind::Rewind: o = run_rewind(p, s.seed); break;
      case ScenarioKind::Audit: o = run_audit(p, s.seed); break;
    }
    r.report["results"] = o.results;
    r.report["assertions"] = o.assertions;
    r.passed = o.passed();
    r.csv = o.csv;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    r.report["error"] = e.what();
    r.passed = false;
  }
  r.report["passed"] = r.passed;
  r.report["runtime_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<ScenarioReport> run_scenarios(const std::vector<Scenario>& scenarios) {
  std::vector<std::future<ScenarioReport>> jobs;
  for (const Scenario& s : scenarios) jobs.push_back(std::async(std::launch::async, run_scenario, s));
  std::vector<ScenarioReport> out;
  for (auto& j : jobs) out.push_back(j.get());
  std::sort(out.begin(), out.end(), [](const ScenarioReport& a, const ScenarioReport& b) { return a.id < b.id; });
  return out;
}

void write_report(const ScenarioReport& r, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base = std::filesystem::path(dir) / r.id;
  std::ofstream(base.string() + ".json") << r.report.dump(2) << '\n';
  std::ofstream(base.string() + ".csv") << r.csv;
}

}  // namespace sqlab::lab
