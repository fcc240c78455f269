// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "sqlab/circuits.hpp"
#include "sqlab/linalg.hpp"

namespace sqlab {

SubstitutionReport substitution_error(const Circuit& c, const Circuit& perturbed, const PureState& input) {
  if (c.num_qubits() != perturbed.num_qubits() || c.output_qubit() != perturbed.output_qubit()) {
    throw Error(ErrorKind::DimensionMismatch, "circuits differ in width or output qubit");
  }
  SubstitutionReport r{};
  r.op_norm_gap = op_norm(unitary_of(c) - unitary_of(perturbed));
  PostSelection a = post_select(simulate(c, input), c.output_qubit(), 1);
  PostSelection b = post_select(simulate(perturbed, input), c.output_qubit(), 1);
  r.acceptance = a.probability;
  r.resulting_state_td = trace_distance(a.state, b.state);
  r.inequality_holds = r.resulting_state_td <= r.op_norm_gap + 1e-9;
  r.normalized_bound = 2.0 * r.op_norm_gap / std::sqrt(a.probability);
  return r;
}

}  // namespace sqlab
