// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqlab/verifier.hpp"

#include <algorithm>
#include <set>

#include "sqlab/linalg.hpp"

namespace sqlab {
namespace {

// Index of the traced qubits once the output qubit has been removed.
std::vector<int> shift_past_output(const std::vector<int>& traced, int output) {
  std::vector<int> out;
  out.reserve(traced.size());
  for (int q : traced) out.push_back(q < output ? q : q - 1);
  return out;
}

std::size_t drop_bit(std::size_t index, int qubit, int n) {
  const int pos = n - 1 - qubit;
  const std::size_t low = index & ((std::size_t{1} << pos) - 1);
  const std::size_t high = index >> (pos + 1);
  return (high << pos) | low;
}

PureState padded_input(const VerifierSpec& v, const PureState& witness) {
  if (witness.num_qubits() != v.witness_qubits) {
    throw Error(ErrorKind::DimensionMismatch, "witness has " + std::to_string(witness.num_qubits()) +
                                                  " qubits, verifier expects " + std::to_string(v.witness_qubits));
  }
  if (v.ancilla_qubits == 0) return witness;
  return witness.tensor(PureState::zeros(v.ancilla_qubits));
}

void require_size(const VerifierSpec& v, int limit, const char* what) {
  if (v.num_qubits() > limit) {
    throw Error(ErrorKind::SizeLimit, std::string(what) + " is limited to " + std::to_string(limit) + " qubits");
  }
}

}  // namespace

void VerifierSpec::validate() const {
  const int n = circuit.num_qubits();
  if (witness_qubits < 1 || ancilla_qubits < 0 || witness_qubits + ancilla_qubits != n) {
    throw Error(ErrorKind::InvalidArgument, "need m >= 1 witness qubits and m + k = circuit width");
  }
  if (!(soundness >= 0.0 && soundness < completeness && completeness <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "need 0 <= s < c <= 1");
  }
  if (!(distance >= 0.0 && distance <= 1.0)) throw Error(ErrorKind::InvalidArgument, "distance outside [0, 1]");
  std::set<int> seen;
  for (int q : traced_qubits) {
    if (q < 0 || q >= n) throw Error(ErrorKind::IndexOutOfRange, "traced qubit out of range");
    if (q == circuit.output_qubit()) throw Error(ErrorKind::InvalidArgument, "the output qubit cannot be traced");
    if (!seen.insert(q).second) throw Error(ErrorKind::InvalidArgument, "traced qubit listed twice");
  }
  if (target && target->num_qubits() != output_register_size()) {
    throw Error(ErrorKind::DimensionMismatch, "target has " + std::to_string(target->num_qubits()) +
                                                  " qubits, resulting state has " +
                                                  std::to_string(output_register_size()));
  }
}

int VerifierSpec::output_register_size() const {
  return circuit.num_qubits() - 1 - static_cast<int>(traced_qubits.size());
}

double circuit_acceptance(const Circuit& c, const PureState& input) {
  Vec out = simulate_vector(c, input.amplitudes());
  double p = 0.0;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (bit_of(static_cast<std::size_t>(i), c.output_qubit(), c.num_qubits())) p += std::norm(out(i));
  }
  return std::min(1.0, p);
}

DensityMatrix circuit_resulting_state(const Circuit& c, const PureState& input, const std::vector<int>& traced,
                                      int outcome) {
  if (traced.empty()) return post_select(simulate(c, input), c.output_qubit(), outcome).state;
  // Trace from the pure branch so the full density matrix is never formed.
  const PureState psi = simulate(c, input);
  const int n = c.num_qubits();
  const int out = c.output_qubit();
  Vec branch(static_cast<Eigen::Index>(psi.dim() / 2));
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    if (bit_of(i, out, n) == outcome) branch(static_cast<Eigen::Index>(drop_bit(i, out, n))) = psi[i];
  }
  const double p = branch.squaredNorm();
  if (p < kZeroBranchTol) {
    throw Error(ErrorKind::ZeroBranch, "post-selected branch has probability " + std::to_string(p), p);
  }
  if (n == 1) return DensityMatrix::trusted(Mat::Identity(1, 1));
  return partial_trace(PureState(branch / std::sqrt(p)), shift_past_output(traced, out));
}

Mat projected_matrix(const VerifierSpec& v) {
  const int n = v.num_qubits();
  const int m = v.witness_qubits;
  const int k = v.ancilla_qubits;
  const Eigen::Index cols = Eigen::Index{1} << m;
  Mat in = Mat::Zero(Eigen::Index{1} << n, cols);
  for (Eigen::Index j = 0; j < cols; ++j) in(j << k, j) = 1.0;
  for (const Gate& g : v.circuit.gates()) apply_gate(g, in, n);
  const int out = v.circuit.output_qubit();
  Mat mm = Mat::Zero(Eigen::Index{1} << (n - 1), cols);
  for (Eigen::Index i = 0; i < in.rows(); ++i) {
    if (!bit_of(static_cast<std::size_t>(i), out, n)) continue;
    mm.row(static_cast<Eigen::Index>(drop_bit(static_cast<std::size_t>(i), out, n))) = in.row(i);
  }
  return mm;
}

double acceptance_probability(const VerifierSpec& v, const PureState& witness) {
  return circuit_acceptance(v.circuit, padded_input(v, witness));
}

// Linear in the witness: Tr(M rho M^dag).
double acceptance_probability(const VerifierSpec& v, const DensityMatrix& witness) {
  if (witness.num_qubits() != v.witness_qubits) throw Error(ErrorKind::DimensionMismatch, "witness width");
  Mat m = projected_matrix(v);
  return std::clamp((m * witness.matrix() * m.adjoint()).trace().real(), 0.0, 1.0);
}

DensityMatrix resulting_state(const VerifierSpec& v, const PureState& witness) {
  return circuit_resulting_state(v.circuit, padded_input(v, witness), v.traced_qubits);
}

DensityMatrix resulting_state(const VerifierSpec& v, const DensityMatrix& witness) {
  if (witness.num_qubits() != v.witness_qubits) throw Error(ErrorKind::DimensionMismatch, "witness width");
  Mat m = projected_matrix(v);
  Mat rho = m * witness.matrix() * m.adjoint();
  double p = rho.trace().real();
  if (p < kZeroBranchTol) throw Error(ErrorKind::ZeroBranch, "verifier never accepts this witness", p);
  rho /= p;
  rho = 0.5 * (rho + rho.adjoint());
  DensityMatrix full = DensityMatrix::trusted(std::move(rho));
  if (v.traced_qubits.empty()) return full;
  return partial_trace(full, shift_past_output(v.traced_qubits, v.circuit.output_qubit()));
}

PureState EncodingSVD::optimal_witness() const { return PureState::normalized(right.col(0)); }

std::vector<PureState> EncodingSVD::top_subspace(double tol) const {
  std::vector<PureState> out;
  if (singular_values.size() == 0) return out;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    if (singular_values(0) - singular_values(i) > tol) break;
    out.push_back(PureState::normalized(right.col(i)));
  }
  return out;
}

EncodingSVD encoding_svd(const VerifierSpec& v) {
  require_size(v, kMaxSvdQubits, "encoding_svd");
  Svd s = svd(projected_matrix(v));
  EncodingSVD e;
  e.singular_values = s.singular_values.cwiseMin(1.0);
  e.right = std::move(s.right);
  e.left = s.left.leftCols(e.singular_values.size());
  e.witness_qubits = v.witness_qubits;
  return e;
}

DensityMatrix left_vector_state(const VerifierSpec& v, const EncodingSVD& e, std::size_t i) {
  PureState l = PureState::normalized(e.left.col(static_cast<Eigen::Index>(i)));
  if (v.traced_qubits.empty()) return l.density();
  return partial_trace(l, shift_past_output(v.traced_qubits, v.circuit.output_qubit()));
}

SoundnessReport soundness_audit(const VerifierSpec& v, Rng& rng, int random_witnesses) {
  require_size(v, kMaxAuditQubits, "soundness_audit");
  if (!v.target) throw Error(ErrorKind::InvalidArgument, "soundness audit needs a target state");
  SoundnessReport r;
  auto check = [&](const std::string& source, const PureState& w, double acc) {
    double td = trace_distance(*v.target, resulting_state(v, w));
    r.max_td = std::max(r.max_td, td);
    if (td > v.distance + kStateTol) r.violations.push_back({source, acc, td});
  };
  EncodingSVD e = encoding_svd(v);
  for (Eigen::Index i = 0; i < e.singular_values.size(); ++i) {
    double acc = e.singular_values(i) * e.singular_values(i);
    if (acc <= v.soundness) continue;
    ++r.singular_checked;
    check("singular:" + std::to_string(i), PureState::normalized(e.right.col(i)), acc);
  }
  for (int j = 0; j < random_witnesses; ++j) {
    PureState w = random_pure_state(v.witness_qubits, rng);
    ++r.random_drawn;
    double acc = acceptance_probability(v, w);
    if (acc <= v.soundness) continue;
    ++r.random_checked;
    check("random:" + std::to_string(j), w, acc);
  }
  return r;
}

}  // namespace sqlab
