// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "sqlab/lab.hpp"
#include "sqlab/qsvt.hpp"

namespace sqlab::lab {
namespace {

constexpr double kToyC = 0.7;
constexpr double kToyS = 0.4;

// Amplified toy verifier, or the toy itself when p == 0.
VerifierSpec amplified_toy(int m, int p, json& out) {
  VerifierSpec toy = toy_verifier(kToyC, kToyS, m);
  if (p == 0) return toy;
  Amplified a = amplify_verifier(toy, p);
  out["repetitions"] = a.repetitions;
  return a.verifier;
}

json log_collapse(int p, std::uint64_t seed) {
  const int m = 2;
  json out = {{"demo", "stateqma-log-collapse"}, {"p", p}, {"witness_qubits", m}};
  VerifierSpec v = amplified_toy(m, p, out);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(m);
  const double acc = acceptance_probability(v, mixed);
  const double bound = std::ldexp(1.0 - std::ldexp(1.0, -p), -m);
  const double td = trace_distance(*v.target, resulting_state(v, mixed));
  Rng rng(seed);
  SoundnessReport audit = soundness_audit(v, rng, 200);
  out["acceptance_mixed"] = acc;
  out["bound"] = bound;
  out["bound_holds"] = acc >= bound - 1e-12;
  out["td_mixed"] = td;
  out["audit_passed"] = audit.passed();
  out["audit_max_td"] = audit.max_td;
  out["passed"] = out["bound_holds"].get<bool>() && audit.passed();
  return out;
}

// Replaces the witness by a maximally mixed state prepared from fresh
// qubits, then amplifies the resulting witness-free verifier (a dummy
// one-qubit witness is required by the model and is never read).
json precise_pipeline(int p) {
  json out = {{"demo", "precise-pipeline"}, {"p", p}};
  VerifierSpec v = amplified_toy(1, p, out);
  const int m = v.witness_qubits;
  const int n = v.num_qubits();
  const int shift = 1 + m;  // dummy witness, then purification qubits

  Circuit c(shift + n, v.circuit.output_qubit() + shift);
  for (int i = 0; i < m; ++i) {
    c.add(gates::h(1 + i));
    c.add(gates::cnot(1 + i, shift + i));
  }
  std::vector<int> map(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) map[static_cast<std::size_t>(i)] = shift + i;
  c.append(v.circuit, map);

  VerifierSpec free;
  free.circuit = std::move(c);
  free.witness_qubits = 1;
  free.ancilla_qubits = shift + n - 1;
  free.target = v.target;
  free.completeness = std::ldexp(1.0 - std::ldexp(1.0, -p), -m);
  free.soundness = std::ldexp(1.0, -p);
  free.distance = v.distance;
  for (int q = 0; q < shift; ++q) free.traced_qubits.push_back(q);
  for (int q : v.traced_qubits) free.traced_qubits.push_back(shift + q);
  free.validate();

  const PureState dummy = PureState::zeros(1);
  const double before = acceptance_probability(free, dummy);
  out["acceptance_witness_free"] = before;
  out["td_witness_free"] = trace_distance(*free.target, resulting_state(free, dummy));
  if (free.completeness - free.soundness < 1e-3) {
    out["passed"] = false;
    out["note"] = "promise gap too small to re-amplify";
    return out;
  }
  const int l = std::max(p, 1);
  Amplified again = amplify_verifier(free, l, InputProjector::AllZero);
  const double after = acceptance_probability(again.verifier, dummy);
  const double td = trace_distance(*free.target, resulting_state(again.verifier, dummy));
  out["reamplified_l"] = l;
  out["reamplified_repetitions"] = again.repetitions;
  out["acceptance_reamplified"] = after;
  out["td_reamplified"] = td;
  out["passed"] = before >= free.completeness - 1e-12 && after >= 1.0 - std::ldexp(1.0, -l);
  return out;
}

}  // namespace

json compose_demo(const std::string& name, int p, std::uint64_t seed) {
  if (p < 0 || p > 20) throw Error(ErrorKind::InvalidArgument, "p must lie in [0, 20]");
  if (name == "stateqma-log-collapse") return log_collapse(p, seed);
  if (name == "precise-pipeline") return precise_pipeline(p);
  throw Error(ErrorKind::InvalidArgument,
              "unknown demo '" + name + "' (expected stateqma-log-collapse or precise-pipeline)");
}

}  // namespace sqlab::lab
