// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqlab/circuits.hpp"

namespace sqlab {

inline constexpr int kMaxSvdQubits = 12;
inline constexpr int kMaxAuditQubits = 10;

// Witness-first layout: the witness occupies qubits 0..m-1 and the k
// ancillas follow, all starting in |0>. The resulting state lives on the
// qubits left after removing the output qubit and `traced_qubits`.
struct VerifierSpec {
  Circuit circuit{1};
  int witness_qubits = 0;
  int ancilla_qubits = 0;
  std::optional<PureState> target;
  double completeness = 1.0;
  double soundness = 0.0;
  double distance = 0.0;
  std::vector<int> traced_qubits;

  // Throws InvalidArgument / DimensionMismatch on a malformed spec.
  void validate() const;
  int num_qubits() const { return circuit.num_qubits(); }
  // Number of qubits in the resulting state.
  int output_register_size() const;
};

// Probability that the output qubit reads 1 after running `c` on `input`.
double circuit_acceptance(const Circuit& c, const PureState& input);
// Post-selected state with the output qubit and `traced` removed. Throws
// ZeroBranch when the branch is empty.
DensityMatrix circuit_resulting_state(const Circuit& c, const PureState& input,
                                      const std::vector<int>& traced, int outcome = 1);

// M = Pi_out V Pi_in as a 2^(n-1) x 2^m matrix: columns are witness basis
// states with zero ancillas, rows are the remaining qubits (output removed)
// in their original order.
Mat projected_matrix(const VerifierSpec& v);

double acceptance_probability(const VerifierSpec& v, const PureState& witness);
double acceptance_probability(const VerifierSpec& v, const DensityMatrix& witness);

DensityMatrix resulting_state(const VerifierSpec& v, const PureState& witness);
DensityMatrix resulting_state(const VerifierSpec& v, const DensityMatrix& witness);

struct EncodingSVD {
  RVec singular_values;  // descending, length min(2^(n-1), 2^m)
  Mat right;             // 2^m x 2^m, columns |psi_i>
  Mat left;              // 2^(n-1) x len, columns |psi~_i>
  int witness_qubits = 0;

  double max_acceptance() const { return singular_values.size() ? singular_values(0) * singular_values(0) : 0.0; }
  PureState optimal_witness() const;
  // Right singular vectors whose singular value is within `tol` of the top.
  std::vector<PureState> top_subspace(double tol = 1e-10) const;
};

EncodingSVD encoding_svd(const VerifierSpec& v);

// Resulting state predicted by the SVD for right singular vector i: the
// left singular vector with the traced qubits removed.
DensityMatrix left_vector_state(const VerifierSpec& v, const EncodingSVD& e, std::size_t i);

struct AuditViolation {
  std::string source;  // "singular:<i>" or "random:<j>"
  double acceptance;
  double td;
};

struct SoundnessReport {
  int singular_checked = 0;
  int random_checked = 0;   // random witnesses with acceptance > s
  int random_drawn = 0;
  double max_td = 0.0;      // over checked witnesses
  std::vector<AuditViolation> violations;
  bool passed() const { return violations.empty(); }
};

// Falsifier for soundness: every checked witness with acceptance > s must
// give a resulting state within td `distance` (+ kStateTol) of the target.
SoundnessReport soundness_audit(const VerifierSpec& v, Rng& rng, int random_witnesses = 1000);

// Wraps a witness-free circuit as a verifier over an m-qubit witness that is
// rejected unless it reads 0^m. Layout: W (m), then c's qubits, then a flag
// that becomes the output. c's output qubit and W are traced.
VerifierSpec embed_statebqp(const Circuit& c, const PureState& target, double gamma, double delta,
                            int witness_qubits = 1);

struct RandomGuessReport {
  double value;          // 2^-m Tr(M^dag M)
  double lambda_max;     // of M^dag M
  bool lower_bound_ok;   // value >= 2^-m lambda_max - 1e-10
};

RandomGuessReport random_guess_acceptance(const VerifierSpec& v);

// Toy verifier: witness W (m qubits), message qubit A, output O. A is
// rotated to RY(message_angle)|0> (the target) regardless of the witness;
// O accepts W = 0^m with probability c and every other basis state with
// probability s. W is traced.
VerifierSpec toy_verifier(double c, double s, int witness_qubits = 1, double message_angle = 1.1);

// Adds a fresh qubit (index n) prepared in |1> and makes it the output.
// The old output qubit keeps its index and is recorded as register
// "old_output"; callers trace it out of the resulting state.
Circuit force_perfect_completeness(const Circuit& c);

}  // namespace sqlab
