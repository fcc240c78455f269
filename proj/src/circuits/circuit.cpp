// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <set>

#include "sqlab/circuits.hpp"
#include "sqlab/linalg.hpp"

namespace sqlab {

Circuit::Circuit(int num_qubits, int output_qubit) : num_qubits_(num_qubits), output_qubit_(output_qubit) {
  if (num_qubits < 1) throw Error(ErrorKind::InvalidArgument, "circuit needs at least one qubit");
  check_qubit(output_qubit);
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits_) {
    throw Error(ErrorKind::IndexOutOfRange,
                "qubit " + std::to_string(q) + " outside a " + std::to_string(num_qubits_) + "-qubit circuit");
  }
}

Circuit& Circuit::add(Gate g) {
  std::vector<int> qs = g.qubits();
  std::set<int> seen;
  for (int q : qs) {
    check_qubit(q);
    if (!seen.insert(q).second) throw Error(ErrorKind::InvalidArgument, "gate uses a qubit twice");
  }
  if (g.targets.empty()) throw Error(ErrorKind::InvalidArgument, "gate without targets");
  if (g.control_values.size() != g.controls.size()) g.control_values.assign(g.controls.size(), 1);
  gates_.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::append(const Circuit& other, const std::vector<int>& qubit_map) {
  if (static_cast<int>(qubit_map.size()) != other.num_qubits()) {
    throw Error(ErrorKind::DimensionMismatch, "qubit map must cover the appended circuit");
  }
  for (const Gate& g : other.gates()) {
    Gate h = g;
    for (int& q : h.targets) q = qubit_map[q];
    for (int& q : h.controls) q = qubit_map[q];
    add(std::move(h));
  }
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  std::vector<int> id(other.num_qubits());
  for (int i = 0; i < other.num_qubits(); ++i) id[i] = i;
  return append(other, id);
}

Circuit& Circuit::set_register(const std::string& name, int start, int size) {
  if (size < 0 || start < 0 || start + size > num_qubits_) {
    throw Error(ErrorKind::IndexOutOfRange, "register '" + name + "' exceeds the circuit");
  }
  registers_[name] = Register{start, size};
  return *this;
}

Circuit& Circuit::set_output_qubit(int q) {
  check_qubit(q);
  output_qubit_ = q;
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit inv(num_qubits_, output_qubit_);
  inv.registers_ = registers_;
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) inv.gates_.push_back(it->dagger());
  return inv;
}

int Circuit::pythagorean_count() const {
  return static_cast<int>(std::count_if(gates_.begin(), gates_.end(), [](const Gate& g) {
    return g.kind == GateKind::PythR || g.kind == GateKind::PythI;
  }));
}

bool Circuit::exact_compatible() const {
  return std::all_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.exact_compatible(); });
}

Vec simulate_vector(const Circuit& c, Vec state) {
  if (static_cast<std::size_t>(state.size()) != (std::size_t{1} << c.num_qubits())) {
    throw Error(ErrorKind::DimensionMismatch, "input does not match the circuit width");
  }
  for (const Gate& g : c.gates()) apply_gate(g, state, c.num_qubits());
  return state;
}

PureState simulate(const Circuit& c, const PureState& input) {
  if (input.num_qubits() != c.num_qubits()) {
    throw Error(ErrorKind::DimensionMismatch, "input does not match the circuit width");
  }
  return PureState::normalized(simulate_vector(c, input.amplitudes()));
}

PureState simulate(const Circuit& c, const PureState& input, Backend backend) {
  if (backend == Backend::Float) return simulate(c, input);
  if (input.num_qubits() != c.num_qubits()) {
    throw Error(ErrorKind::DimensionMismatch, "input does not match the circuit width");
  }
  Eigen::Index idx = -1;
  for (Eigen::Index i = 0; i < input.amplitudes().size(); ++i) {
    if (std::abs(input.amplitudes()(i) - cplx(1.0)) < kNormTol) idx = i;
  }
  if (idx < 0) throw Error(ErrorKind::Unsupported, "exact backend takes a computational basis input");
  return PureState::normalized(simulate_exact(c, static_cast<std::size_t>(idx)).to_vector());
}

Mat unitary_of(const Circuit& c) {
  if (c.num_qubits() > kMaxUnitaryQubits) {
    throw Error(ErrorKind::SizeLimit, "unitary_of is limited to " + std::to_string(kMaxUnitaryQubits) + " qubits");
  }
  std::size_t dim = std::size_t{1} << c.num_qubits();
  Mat u = Mat::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const Gate& g : c.gates()) apply_gate(g, u, c.num_qubits());
  return u;
}

Circuit random_circuit(int num_qubits, int num_gates, Rng& rng) {
  Circuit c(num_qubits, 0);
  std::uniform_int_distribution<int> kind(0, num_qubits > 1 ? 6 : 5);
  std::uniform_int_distribution<int> qubit(0, num_qubits - 1);
  for (int i = 0; i < num_gates; ++i) {
    int k = kind(rng);
    int q = qubit(rng);
    switch (k) {
      case 0: c.add(gates::h(q)); break;
      case 1: c.add(gates::t(q)); break;
      case 2: c.add(gates::tdg(q)); break;
      case 3: c.add(gates::x(q)); break;
      case 4: c.add(gates::z(q)); break;
      case 5: c.add(gates::custom(random_unitary(2, rng), {q})); break;
      default: {
        int r = qubit(rng);
        while (r == q) r = qubit(rng);
        c.add(gates::cnot(q, r));
      }
    }
  }
  return c;
}

Circuit random_pythagorean_circuit(int num_qubits, int pythagorean_gates, int other_gates, Rng& rng) {
  Circuit c(num_qubits, 0);
  std::vector<int> kinds(static_cast<std::size_t>(pythagorean_gates), 0);
  kinds.resize(static_cast<std::size_t>(pythagorean_gates + other_gates), 1);
  std::shuffle(kinds.begin(), kinds.end(), rng);
  std::uniform_int_distribution<int> qubit(0, num_qubits - 1);
  std::bernoulli_distribution coin(0.5);
  for (int k : kinds) {
    int q = qubit(rng);
    if (k == 0) {
      c.add(coin(rng) ? gates::pyth_r(q) : gates::pyth_i(q));
    } else if (num_qubits > 1 && coin(rng)) {
      int r = qubit(rng);
      while (r == q) r = qubit(rng);
      c.add(gates::cnot(q, r));
    } else {
      c.add(gates::x(q));
    }
  }
  return c;
}

Circuit perturb_gate(const Circuit& c, std::size_t index, double distance, Rng& rng) {
  if (index >= c.size()) throw Error(ErrorKind::IndexOutOfRange, "gate index out of range");
  Circuit out(c.num_qubits(), c.output_qubit());
  for (const auto& [name, r] : c.registers()) out.set_register(name, r.start, r.size);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gates()[i];
    if (i != index) {
      out.add(g);
      continue;
    }
    // exp(i eps K) with ||K|| = 1 sits at distance 2 sin(eps / 2) from I.
    Mat k = random_hermitian(static_cast<std::size_t>(g.matrix.rows()), rng);
    k /= op_norm(k);
    double eps = 2.0 * std::asin(std::min(1.0, distance / 2.0));
    HermitianEig e = hermitian_eig(k);
    Vec phases(e.values.size());
    for (Eigen::Index j = 0; j < phases.size(); ++j) phases(j) = std::polar(1.0, eps * e.values(j));
    Mat kick = e.vectors * phases.asDiagonal() * e.vectors.adjoint();
    Gate p = g;
    p.matrix = g.matrix * kick;
    p.kind = g.controls.empty() ? GateKind::Custom : GateKind::Controlled;
    out.add(std::move(p));
  }
  return out;
}

}  // namespace sqlab
