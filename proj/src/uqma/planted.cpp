// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "sqlab/uqma.hpp"

namespace sqlab {
namespace {

Mat ry(double p) {
  const double th = 2.0 * std::asin(std::sqrt(p));
  Mat r(2, 2);
  r << std::cos(th / 2), -std::sin(th / 2), std::sin(th / 2), std::cos(th / 2);
  return r;
}

}  // namespace

VerifierSpec planted_verifier(const PureState& w, double nu, double r, int padding) {
  if (w.num_qubits() != 1) throw Error(ErrorKind::DimensionMismatch, "planted witness must be one qubit");
  if (!(nu >= 0.0 && r >= 0.0 && r < 1.0 - nu)) throw Error(ErrorKind::InvalidArgument, "need 0 <= r < 1 - nu");
  if (padding < 0) throw Error(ErrorKind::InvalidArgument, "padding must be non-negative");
  // columns |w>, |w_perp>
  Mat u(2, 2);
  u << w[0], -std::conj(w[1]), w[1], std::conj(w[0]);

  Circuit c(2, 1);
  c.add(gates::custom(u.adjoint(), {0}));
  c.add(gates::controlled(ry(1.0 - nu), {0}, {1}, {0}));
  c.add(gates::controlled(ry(r), {0}, {1}, {1}));
  c.add(gates::custom(u, {0}));
  c = pad_with_identities(c, padding);
  c.set_register("W", 0, 1);
  c.set_register("O", 1, 1);

  VerifierSpec v;
  v.circuit = std::move(c);
  v.witness_qubits = 1;
  v.ancilla_qubits = 1;
  v.completeness = 1.0 - nu;
  v.soundness = r;
  v.validate();
  return v;
}

}  // namespace sqlab
