// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "sqlab/linalg.hpp"
#include "sqlab/verifier.hpp"

namespace sqlab {

VerifierSpec embed_statebqp(const Circuit& c, const PureState& target, double gamma, double delta,
                            int witness_qubits) {
  const int m = witness_qubits;
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "embedding needs at least one witness qubit");
  const int nc = c.num_qubits();
  const int flag = m + nc;
  Circuit v(m + nc + 1, flag);
  std::vector<int> map(static_cast<std::size_t>(nc));
  for (int i = 0; i < nc; ++i) map[static_cast<std::size_t>(i)] = m + i;
  v.append(c, map);

  // flag <- [W == 0^m] AND [c accepts]
  std::vector<int> controls, values;
  for (int i = 0; i < m; ++i) {
    controls.push_back(i);
    values.push_back(0);
  }
  controls.push_back(m + c.output_qubit());
  values.push_back(1);
  Mat x(2, 2);
  x << 0, 1, 1, 0;
  v.add(gates::controlled(x, controls, {flag}, values));
  v.set_register("W", 0, m);
  v.set_register("C", m, nc);
  v.set_register("O", flag, 1);

  VerifierSpec spec;
  spec.circuit = std::move(v);
  spec.witness_qubits = m;
  spec.ancilla_qubits = nc + 1;
  spec.target = target;
  spec.completeness = gamma;
  spec.soundness = gamma / 2.0;
  spec.distance = delta;
  for (int i = 0; i < m; ++i) spec.traced_qubits.push_back(i);
  spec.traced_qubits.push_back(m + c.output_qubit());
  spec.validate();
  return spec;
}

RandomGuessReport random_guess_acceptance(const VerifierSpec& v) {
  if (v.num_qubits() > kMaxSvdQubits) {
    throw Error(ErrorKind::SizeLimit, "random_guess_acceptance is limited to " + std::to_string(kMaxSvdQubits) +
                                          " qubits");
  }
  Mat m = projected_matrix(v);
  const double scale = std::ldexp(1.0, -v.witness_qubits);
  RandomGuessReport r;
  r.value = scale * m.squaredNorm();
  double top = op_norm(m);
  r.lambda_max = top * top;
  r.lower_bound_ok = r.value >= scale * r.lambda_max - 1e-10;
  return r;
}

VerifierSpec toy_verifier(double c, double s, int witness_qubits, double message_angle) {
  const int m = witness_qubits;
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "toy verifier needs a witness qubit");
  if (!(0.0 <= s && s < c && c <= 1.0)) throw Error(ErrorKind::InvalidArgument, "need 0 <= s < c <= 1");
  auto ry = [](double theta) {
    Mat r(2, 2);
    r << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
    return r;
  };
  auto angle = [](double p) { return 2.0 * std::asin(std::sqrt(p)); };
  const int a = m;
  const int o = m + 1;
  Circuit v(m + 2, o);
  v.add(gates::custom(ry(message_angle), {a}));
  v.add(gates::custom(ry(angle(s)), {o}));
  std::vector<int> controls(static_cast<std::size_t>(m)), values(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) controls[static_cast<std::size_t>(i)] = i;
  v.add(gates::controlled(ry(angle(c) - angle(s)), controls, {o}, values));
  v.set_register("W", 0, m);
  v.set_register("A", a, 1);
  v.set_register("O", o, 1);

  VerifierSpec spec;
  spec.circuit = std::move(v);
  spec.witness_qubits = m;
  spec.ancilla_qubits = 2;
  spec.target = PureState::normalized((Vec(2) << std::cos(message_angle / 2), std::sin(message_angle / 2)).finished());
  spec.completeness = c;
  spec.soundness = s;
  for (int i = 0; i < m; ++i) spec.traced_qubits.push_back(i);
  spec.validate();
  return spec;
}

Circuit force_perfect_completeness(const Circuit& c) {
  const int n = c.num_qubits();
  Circuit out(n + 1, n);
  out.append(c);
  out.add(gates::x(n));
  for (const auto& [name, r] : c.registers()) out.set_register(name, r.start, r.size);
  out.set_register("old_output", c.output_qubit(), 1);
  return out;
}

}  // namespace sqlab
