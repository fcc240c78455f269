// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "sqlab/kitaev.hpp"
#include "sqlab/lab.hpp"
#include "sqlab/linalg.hpp"
#include "sqlab/qsvt.hpp"
#include "sqlab/uqma.hpp"

namespace sqlab::lab {
namespace {

Check le(const std::string& name, double value, double bound, const std::string& tol = "0") {
  return {name, "<= " + fmt(bound), fmt(value), tol, value <= bound};
}

Check ge(const std::string& name, double value, double bound, const std::string& tol = "0") {
  return {name, ">= " + fmt(bound), fmt(value), tol, value >= bound};
}

Check near(const std::string& name, double value, double expected, double tol) {
  return {name, fmt(expected), fmt(value), fmt(tol), std::abs(value - expected) <= tol};
}

Check count(const std::string& name, int ok, int total) {
  return {name, std::to_string(total) + "/" + std::to_string(total), std::to_string(ok) + "/" + std::to_string(total),
          "0", ok == total};
}

mpq_class ratio(const mpz_class& a, const mpz_class& b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

PureState fixed_witness() {
  Vec w(2);
  w << 0.6, cplx(0.0, 0.8);
  return PureState(w);
}

// AC-1
std::vector<Check> sign_envelope() {
  const double delta = 0.1, eps = 1e-3;
  SignPolynomial p = approx_sign_erf(delta, eps);
  double peak = 0.0, worst = 0.0;
  const int grid = 20001;
  for (int i = 0; i < grid; ++i) {
    const double x = -1.0 + 2.0 * i / (grid - 1);
    const double v = p(x);
    peak = std::max(peak, std::abs(v));
    if (std::abs(x) >= delta) worst = std::max(worst, std::abs(v - (x > 0 ? 1.0 : -1.0)));
  }
  RVec c = p.chebyshev();
  double even = 0.0;
  for (Eigen::Index i = 0; i < c.size(); i += 2) even = std::max(even, std::abs(c(i)));
  return {le("max even Chebyshev coefficient", even, 0.0),
          le("max |P| on 20001-point grid", peak, 1.0),
          le("max |P - sgn| outside (-0.1, 0.1)", worst, eps),
          le("degree", p.degree, 30.0 * std::log(1.0 / eps) / delta)};
}

// Random odd polynomial with ||c||_1 = 0.9 in the Chebyshev basis.
SignPolynomial random_odd_polynomial(int degree, Rng& rng) {
  std::normal_distribution<double> g;
  SignPolynomial p;
  p.basis = PolyBasis::Chebyshev;
  p.degree = degree;
  p.coefficients = RVec::Zero(degree + 1);
  for (int k = 1; k <= degree; k += 2) p.coefficients(k) = g(rng);
  p.coefficients *= 0.9 / p.coefficients.cwiseAbs().sum();
  return p;
}

// AC-2
std::vector<Check> qsvt_calculus() {
  Rng rng(2024);
  std::uniform_int_distribution<int> qubits(3, 4), deg(0, 15);
  double worst = 0.0;
  int ok = 0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    const int n = qubits(rng);
    ProjectedUnitaryEncoding enc;
    enc.unitary = random_unitary(std::size_t{1} << n, rng);
    // Pi_in fixes one random qubit, Pi_out fixes one or two.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution coin;
    enc.pi_in = basis_projector(n, {order[0]}, {coin(rng) ? 1 : 0});
    const int k = 1 + (t % 2);
    std::vector<int> oq(order.begin() + 1, order.begin() + 1 + k), ov;
    for (int i = 0; i < k; ++i) ov.push_back(coin(rng) ? 1 : 0);
    enc.pi_out = basis_projector(n, oq, ov);
    SignPolynomial p = random_odd_polynomial(2 * deg(rng) + 1, rng);
    const double err = op_norm(apply_qsvt(enc, find_phases(p)) - functional_calculus(enc, p));
    worst = std::max(worst, err);
    ok += err <= 1e-6;
  }
  return {count("encodings within 1e-6", ok, trials), le("max operator-norm error", worst, 1e-6, "1e-6")};
}

// AC-3
std::vector<Check> error_reduction() {
  const double c = 0.7, s = 0.4;
  const int l = 6;
  VerifierSpec toy = toy_verifier(c, s);
  Amplified a = amplify_verifier(toy, l);
  const PureState good = PureState::basis(1, 0), bad = PureState::basis(1, 1);
  const double completeness = acceptance_probability(a.verifier, good);
  // The witness-free singular vectors of the toy are the basis states, so
  // the orthogonal witness carries the largest no-instance acceptance.
  EncodingSVD e = encoding_svd(a.verifier);
  const double soundness = e.singular_values.size() > 1 ? e.singular_values(1) * e.singular_values(1) : 0.0;
  const double td = trace_distance(resulting_state(toy, good), resulting_state(a.verifier, good));
  const double k = a.repetitions * (std::sqrt(c) - std::sqrt(s)) / l;
  const double eps = std::ldexp(1.0, -l);
  return {ge("completeness", completeness, 1.0 - eps),
          le("soundness (second singular value squared)", soundness, eps),
          le("acceptance of |1>", acceptance_probability(a.verifier, bad), eps),
          le("td(before, after), optimal witness", td, 2.0 * eps),
          le("repetitions", a.repetitions, 40.0 * l / (std::sqrt(c) - std::sqrt(s))),
          le("K = repetitions (sqrt c - sqrt s) / l", k, 40.0)};
}

mpq_class rational_delta(double d) {
  if (d == 0.05) return mpq_class(1, 20);
  if (d == 0.1) return mpq_class(1, 10);
  return mpq_class(1, 5);
}

// AC-4
std::vector<Check> path_chain_suite() {
  double stat = 0.0, e0 = 0.0, overlap = 1.0, gap_diff = 0.0, cheeger = -1.0;
  int stat_ok = 0, cond_ok = 0, total = 0;
  for (int T = 2; T <= 64; ++T) {
    for (double d1 : {0.05, 0.1, 0.2}) {
      ++total;
      PathChain ch = build_path_chain(weighted_distribution(T, d1));
      try {
        ch.validate(1e-12);
        ++stat_ok;
      } catch (const Error& e) {
        stat = std::max(stat, e.residual());
      }
      RealSymmetricEig h = symmetric_eig(path_hamiltonian(ch));
      e0 = std::max(e0, std::abs(h.values(0)));
      const double ov = std::abs(h.vectors.col(0).dot(ch.pi.cwiseSqrt()));
      overlap = std::min(overlap, ov * ov);
      const double dp = ch.spectral_gap();
      gap_diff = std::max(gap_diff, std::abs(h.values(1) - dp));
      const double phi = min_conductance(ch).phi;
      cheeger = std::max(cheeger, 0.5 * phi * phi - dp);
      auto [cut, exact] = exact_min_conductance(exact_weighted_distribution(T, rational_delta(d1)));
      cond_ok += exact == mpq_class(1, 4 * T);
      (void)cut;
    }
  }
  return {count("stationarity / reversibility within 1e-12", stat_ok, total),
          le("max |ground energy of H_path|", e0, 1e-10, "1e-10"),
          ge("min overlap^2 with sqrt(pi)", overlap, 1.0 - 1e-10, "1e-10"),
          le("max |Delta(H_path) - Delta_P|", gap_diff, 1e-10, "1e-10"),
          le("max (Phi^2 / 2 - Delta_P)", cheeger, 0.0),
          count("min prefix-cut conductance == 1/(4T) exactly", cond_ok, total)};
}

// AC-5
std::vector<Check> weighted_kitaev() {
  double e_err = 0.0, fid = 1.0, c0 = 1e300;
  int bound_ok = 0, total = 0;
  for (double p : {0.7, 0.8, 0.9}) {
    for (int pad : {0, 2}) {
      for (double d1 : {0.05, 0.1}) {
        ++total;
        VerifierSpec v = planted_verifier(fixed_witness(), 1.0 - p, 0.3, pad);
        WeightedKitaevHamiltonian h = build_weighted_kitaev(v, d1);
        GapReport g = verify_gap_bound(h);
        HermitianEig e = hermitian_eig(h.h);
        e_err = std::max(e_err, std::abs(e.values(0) - (1.0 - p)));
        fid = std::min(fid, std::norm(e.vectors.col(0).dot(history_state(v, fixed_witness(), h.chain.pi))));
        if (g.c0) c0 = std::min(c0, *g.c0);
        bound_ok += g.gap_bound_holds;
      }
    }
  }
  return {le("max |ground energy - (1 - max acceptance)|", e_err, 1e-8, "1e-8"),
          ge("min fidelity with the history state", fid, 1.0 - 1e-8, "1e-8"),
          ge("min Delta T^3 / (nu delta1)", c0, kGapConstantFloor),
          count("Delta >= path-gap bound", bound_ok, total)};
}

// AC-6
std::vector<Check> hadamard_test() {
  VerifierSpec v = planted_verifier(fixed_witness(), 0.0, 0.3);
  WeightedKitaevHamiltonian h = build_weighted_kitaev(v, 0.1);
  HadamardTestVerifier ht = build_hadamard_test_verifier(h, v, fixed_witness());
  std::vector<Check> out;
  CertificateReport g = soundness_certificate(ht, 1.0);
  out.push_back(near("ground-state acceptance vs (1 + cos nu t)/2", g.acceptance, (1.0 + std::cos(h.nu * ht.t)) / 2.0,
                     1e-8));
  for (double a : {0.9, 0.95, 0.99}) {
    CertificateReport c = soundness_certificate(ht, a);
    const std::string tag = " (alpha0 = " + fmt(a) + ")";
    out.push_back(near("eigen-mixture acceptance" + tag, c.acceptance, c.acceptance_formula, 1e-8));
    out.push_back(ge("F^2" + tag, c.f2, c.f2_lower - 1e-6, "1e-6"));
    Check td = le("td vs 2 delta'" + tag, c.td, 2.0 * c.delta_prime + 1e-6, "1e-6");
    if (!c.premise) td.name += " [premise p >= s' false]";
    out.push_back(td);
  }
  GapFormula f = completeness_soundness_gap(ht);
  out.push_back(near("c' - s' vs (1 - cos l1 t)(cos nu t - cos l1 t)", f.gap, f.product, 1e-8));
  return out;
}

// AC-7
std::vector<Check> exact_rational() {
  Rng rng(2024);
  std::uniform_int_distribution<int> nq(1, 4), lg(0, 12), other(0, 10);
  int den_ok = 0, float_ok = 0;
  double worst = 0.0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const int n = nq(rng);
    Circuit c = random_pythagorean_circuit(n, lg(rng), other(rng), rng);
    c.set_output_qubit(std::uniform_int_distribution<int>(0, n - 1)(rng));
    ExactAcceptance e = exact_acceptance(c);
    den_ok += e.denominator_exponent <= 2 * e.pythagorean_gates;
    const double err = std::abs(circuit_acceptance(c, PureState::zeros(n)) - e.probability.get_d());
    worst = std::max(worst, err);
    float_ok += err <= 1e-12;
  }
  return {count("denominator divides 5^(2l)", den_ok, trials), count("float backend within 1e-12", float_ok, trials),
          le("max |float - exact|", worst, 1e-12, "1e-12")};
}

// X then PYTH_R on the output; every witness is accepted with 16/25.
VerifierSpec reference_rewinding_verifier() {
  VerifierSpec v;
  v.circuit = Circuit(2, 1);
  v.circuit.add(gates::x(1));
  v.circuit.add(gates::pyth_r(1));
  v.witness_qubits = 1;
  v.ancilla_qubits = 1;
  v.completeness = 0.5;
  v.soundness = 0.25;
  return v;
}

// AC-8
std::vector<Check> rewinding_exactness() {
  VerifierSpec ref = reference_rewinding_verifier();
  std::vector<Check> out;
  ExactRewinding honest = exact_rewinding(ref, 0, 16);
  FloatRewinding fh = float_rewinding(perfect_completeness_transform(ref, 16), 0);
  out.push_back({"reference Pr[Q], k = 16", "1/2", rational_to_string(honest.q_acceptance), "exact",
                 honest.q_acceptance == mpq_class(1, 2)});
  out.push_back({"reference rewound acceptance, honest k = 16", "1", rational_to_string(honest.rewound), "exact",
                 honest.rewound == 1});
  ExactRewinding over = exact_rewinding(ref, 0, 20);
  out.push_back({"reference rewound acceptance, k = 20", rational_to_string(g_eval(ratio(16, 20))),
                 rational_to_string(over.rewound), "exact", over.rewound == g_eval(ratio(16, 20))});

  Rng rng(2024);
  std::uniform_int_distribution<int> nq(2, 3), lg(1, 2), other(1, 5);
  int q_ok = 0, q_total = 0, g_ok = 0, g_total = 0, h_ok = 0, h_total = 0, s_ok = 0, s_total = 0;
  double fid = fh.fidelity;
  for (int t = 0; t < 40; ++t) {
    VerifierSpec v;
    const int n = nq(rng);
    v.circuit = random_pythagorean_circuit(n, lg(rng), other(rng), rng);
    v.circuit.set_output_qubit(n - 1);
    v.witness_qubits = 1;
    v.ancilla_qubits = n - 1;
    v.completeness = 0.5;
    v.soundness = 0.25;
    const std::size_t w = std::uniform_int_distribution<std::size_t>(0, 1)(rng);
    const mpz_class den = acceptance_denominator(v.circuit.pythagorean_count());
    const mpz_class half = (den + 1) / 2;
    const mpz_class kxw = exact_rewinding(v, w, den).k_xw;
    std::vector<mpz_class> ks = {half, den, kxw + half};
    if (kxw >= half) ks.push_back(kxw);
    for (const mpz_class& k : ks) {
      ExactRewinding e = exact_rewinding(v, w, k);
      ++q_total;
      q_ok += e.q_acceptance == ratio(e.k_xw, 2 * k);
      if (k >= e.k_xw) {
        ++g_total;
        g_ok += e.rewound == g_eval(ratio(e.k_xw, k));
      }
      if (k == e.k_xw) {
        ++h_total;
        h_ok += e.rewound == 1;
      }
      if (e.rewound != 0) {
        ++s_total;
        s_ok += e.state_equal;
      }
      RewindingLayout lay{1, n, counter_qubits(k, v.circuit.pythagorean_count())};
      // Float runs for l >= 2 take minutes (11+ counter qubits); the exact
      // path above covers them.
      if (e.rewound != 0 && v.circuit.pythagorean_count() <= 1 && lay.width() <= kMaxRewindSimQubits) {
        RewindingVerifier rv = perfect_completeness_transform(v, k);
        if (!rv.rejects) fid = std::min(fid, float_rewinding(rv, w).fidelity);
      }
    }
  }
  out.push_back(count("Pr[Q] == k_xw / 2k", q_ok, q_total));
  out.push_back(count("rewound acceptance == g(k_xw / k)", g_ok, g_total));
  out.push_back(count("honest k accepted with probability exactly 1", h_ok, h_total));
  out.push_back(count("rewound state == conditional state (exact)", s_ok, s_total));
  out.push_back(ge("min float resulting-state fidelity", fid, 1.0 - 1e-10, "1e-10"));
  out.push_back({"g strictly increasing on 1000 points", "true", monotonicity_check(1000) ? "true" : "false", "exact",
                 monotonicity_check(1000)});
  return out;
}

// AC-9
std::vector<Check> structural() {
  Rng rng(2024);
  std::vector<Check> out;
  double mult = 0.0, mix = -1.0;
  for (int t = 0; t < 20; ++t) {
    Circuit c = random_circuit(2, 6, rng);
    const PureState zero = PureState::zeros(2);
    const double gamma = circuit_acceptance(c, zero);
    if (gamma < 1e-6) continue;
    DensityMatrix rho = circuit_resulting_state(c, zero, {});
    HermitianEig e = hermitian_eig(rho.matrix());
    PureState target = PureState::normalized(e.vectors.col(e.vectors.cols() - 1));
    const double delta = trace_distance(target, rho);
    VerifierSpec v = embed_statebqp(c, target, gamma, std::min(1.0, delta + 1e-9), 2);
    for (int j = 0; j < 5; ++j) {
      PureState w = random_pure_state(2, rng);
      mult = std::max(mult, std::abs(acceptance_probability(v, w) - std::norm(w[0]) * gamma));
    }
    // The forced circuit always accepts; its state mixes both branches.
    Circuit f = force_perfect_completeness(c);
    DensityMatrix forced = circuit_resulting_state(f, PureState::zeros(3), {c.output_qubit()});
    mix = std::max(mix, trace_distance(target, forced) - (gamma * delta + 1.0 - gamma));
  }
  out.push_back(le("max |acceptance - |<w|0^m>|^2 gamma|", mult, 1e-12, "1e-12"));
  out.push_back(le("max (td - (gamma delta + 1 - gamma))", mix, 1e-10, "1e-10"));

  json demo = compose_demo("stateqma-log-collapse", 8, 2024);
  out.push_back(ge("mixed-witness acceptance, p = 8", demo["acceptance_mixed"].get<double>(),
                   demo["bound"].get<double>()));
  out.push_back({"mixed-witness soundness audit", "pass", demo["audit_passed"].get<bool>() ? "pass" : "fail", "0",
                 demo["audit_passed"].get<bool>()});

  int literal = 0, normalized = 0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    Circuit c = random_circuit(3, 8, rng);
    const PureState zero = PureState::zeros(3);
    if (circuit_acceptance(c, zero) < 1e-3) {
      --t;
      continue;
    }
    const std::size_t idx = std::uniform_int_distribution<std::size_t>(0, c.gates().size() - 1)(rng);
    SubstitutionReport r = substitution_error(c, perturb_gate(c, idx, 0.05, rng), zero);
    literal += r.inequality_holds;
    normalized += r.resulting_state_td <= r.normalized_bound + 1e-9;
  }
  out.push_back(count("substitution: td <= ||Q - Q'||", literal, trials));
  out.push_back(count("substitution: td <= 2 ||Q - Q'|| / sqrt(p_acc)", normalized, trials));
  return out;
}

// AC-10
std::vector<Check> determinism() {
  const std::string cfg = R"({"scenarios": [
    {"id": "amplify", "kind": "amplify", "seed": 11, "params": {"l": 4}},
    {"id": "audit", "kind": "audit", "seed": 12},
    {"id": "hadamard", "kind": "hadamard-test", "seed": 13},
    {"id": "kitaev", "kind": "kitaev", "seed": 14, "params": {"acceptance": 0.9, "T": 5}},
    {"id": "rewind", "kind": "rewind", "seed": 15},
    {"id": "signpoly", "kind": "signpoly", "seed": 16, "params": {"grid": 501}}
  ]})";
  std::vector<Scenario> s = parse_config(cfg);
  std::vector<ScenarioReport> a = run_scenarios(s), b = run_scenarios(s);
  int same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i].csv == b[i].csv && !a[i].csv.empty();
  return {count("byte-identical CSV across runs", same, static_cast<int>(a.size()))};
}

struct Entry {
  const char* id;
  const char* title;
  double limit_s;
  std::function<std::vector<Check>()> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {"AC-1", "sign-polynomial envelope", 1, sign_envelope},
      {"AC-2", "QSVT functional calculus", 30, qsvt_calculus},
      {"AC-3", "doubly-preserving error reduction", 60, error_reduction},
      {"AC-4", "path-chain suite", 10, path_chain_suite},
      {"AC-5", "weighted Kitaev Hamiltonian", 120, weighted_kitaev},
      {"AC-6", "Hadamard-test verifier", 120, hadamard_test},
      {"AC-7", "exact rational acceptance", 30, exact_rational},
      {"AC-8", "rewinding exactness", 60, rewinding_exactness},
      {"AC-9", "structural propositions", 60, structural},
      {"AC-10", "determinism", 60, determinism},
  };
  return r;
}

}  // namespace

bool CriterionResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<std::string> criterion_ids() {
  std::vector<std::string> ids;
  for (const Entry& e : registry()) ids.emplace_back(e.id);
  return ids;
}

CriterionResult run_criterion(const std::string& id) {
  for (const Entry& e : registry()) {
    if (id != e.id) continue;
    CriterionResult r{e.id, e.title, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
      r.checks = e.run();
    } catch (const Error& err) {
      r.checks.push_back({"completed without error", "no error", err.what(), "", false});
    }
    r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.checks.push_back(le("runtime (s)", r.runtime_s, e.limit_s));
    return r;
  }
  std::string valid;
  for (const std::string& s : criterion_ids()) valid += (valid.empty() ? "" : ", ") + s;
  throw Error(ErrorKind::InvalidArgument, "unknown criterion '" + id + "'; valid ids: " + valid);
}

namespace {

void write_check(std::ostream& os, const Check& c) {
  os << "\n    [" << (c.passed ? "ok" : "FAIL") << "] " << c.name << ": " << c.computed << ", expected " << c.expected;
  if (c.tolerance != "0" && !c.tolerance.empty()) os << " (tol " << c.tolerance << ")";
}

}  // namespace

std::string format_criterion(const CriterionResult& r, bool verbose) {
  std::ostringstream os;
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.runtime_s);
  os << (r.passed() ? "PASS " : "FAIL ") << r.id << "  " << r.title << "  (" << secs << " s)";
  if (verbose) {
    for (const Check& c : r.checks) write_check(os, c);
  }
  return os.str();
}

std::string format_failures(const CriterionResult& r) {
  std::ostringstream os;
  os << r.id;
  for (const Check& c : r.checks) {
    if (!c.passed) write_check(os, c);
  }
  return os.str();
}

}  // namespace sqlab::lab
