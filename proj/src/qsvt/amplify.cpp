// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "sqlab/qsvt.hpp"

namespace sqlab {
namespace {

struct ProjectorSpec {
  std::vector<int> qubits;
  std::vector<int> values;
};

Mat pauli_x() {
  Mat x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

// C_P NOT onto the ancilla; an empty projector spec means P = I.
void add_cnot(Circuit& c, const ProjectorSpec& p, int anc) {
  if (p.qubits.empty()) {
    c.add(gates::x(anc));
  } else {
    c.add(gates::controlled(pauli_x(), p.qubits, {anc}, p.values));
  }
}

void add_phase(Circuit& c, const ProjectorSpec& p, int anc, double phi) {
  Mat rz(2, 2);
  rz << std::polar(1.0, -phi), 0, 0, std::polar(1.0, phi);
  add_cnot(c, p, anc);
  c.add(gates::custom(rz, {anc}));
  add_cnot(c, p, anc);
}

}  // namespace

Amplified amplify_verifier(const VerifierSpec& v, int l, InputProjector p, PolyBackend backend) {
  v.validate();
  if (l < 1 || l > 40) throw Error(ErrorKind::InvalidArgument, "l must lie in [1, 40]");
  const double gap = v.completeness - v.soundness;
  const double min_gap = backend == PolyBackend::Erf ? 1e-3 : 1e-6;
  if (gap < min_gap) throw Error(ErrorKind::InvalidArgument, "promise gap too small for this backend", gap);
  if (v.num_qubits() + 2 > kMaxUnitaryQubits) throw Error(ErrorKind::SizeLimit, "verifier too wide to amplify");

  const double eps = std::ldexp(1.0, -l);
  Amplified out;
  out.polynomial = threshold_polynomial(std::sqrt(v.soundness), std::sqrt(v.completeness), eps, backend);
  out.phases = find_phases(out.polynomial);
  const int d = static_cast<int>(out.phases.angles.size());
  out.repetitions = d;

  const int n = v.num_qubits();
  const int anc = n;
  const int flag = n + 1;
  const int old_out = v.circuit.output_qubit();
  ProjectorSpec pin, pout{{old_out}, {1}};
  for (int q = (p == InputProjector::AllZero ? 0 : v.witness_qubits); q < n; ++q) {
    pin.qubits.push_back(q);
    pin.values.push_back(0);
  }

  std::vector<int> id(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = i;
  const Circuit inv = v.circuit.inverse();

  Circuit c(n + 2, flag);
  c.add(gates::h(anc));
  c.append(v.circuit, id);
  for (int j = d; j >= 1; --j) {
    add_phase(c, j % 2 == 1 ? pout : pin, anc, out.phases.angles[static_cast<std::size_t>(j) - 1]);
    if (j > 1) c.append(j % 2 == 1 ? inv : v.circuit, id);
  }
  c.add(gates::h(anc));
  c.add(gates::controlled(pauli_x(), {old_out, anc}, {flag}, {1, 0}));
  for (const auto& [name, r] : v.circuit.registers()) c.set_register(name, r.start, r.size);
  c.set_register("phase", anc, 1);
  c.set_register("flag", flag, 1);

  VerifierSpec& a = out.verifier;
  a.circuit = std::move(c);
  a.witness_qubits = v.witness_qubits;
  a.ancilla_qubits = v.ancilla_qubits + 2;
  a.target = v.target;
  a.completeness = 1.0 - eps;
  a.soundness = eps;
  a.distance = v.distance;
  a.traced_qubits = v.traced_qubits;
  a.traced_qubits.push_back(old_out);
  a.traced_qubits.push_back(anc);
  std::sort(a.traced_qubits.begin(), a.traced_qubits.end());
  a.validate();
  return out;
}

}  // namespace sqlab
