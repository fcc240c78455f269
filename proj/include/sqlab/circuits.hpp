// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sqlab/qstate.hpp"

namespace sqlab {

inline constexpr int kMaxUnitaryQubits = 14;
inline constexpr double kUnitaryTol = 1e-12;

enum class GateKind { CNOT, H, T, Tdg, PythR, PythI, X, Z, Controlled, Custom };

const char* to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& name);

// A gate is a target unitary (2x2 or 4x4 for the named kinds, larger for
// blocks), optionally conditioned on control qubits taking given values.
// CNOT is stored as control {c}, target {t}.
struct Gate {
  GateKind kind = GateKind::Custom;
  std::vector<int> targets;
  std::vector<int> controls;
  std::vector<int> control_values;  // one per control, each 0 or 1
  Mat matrix;                       // target-space unitary

  std::vector<int> qubits() const;  // controls first, then targets
  Gate dagger() const;
  bool exact_compatible() const;
};

namespace gates {
Gate cnot(int control, int target);
Gate h(int q);
Gate t(int q);
Gate tdg(int q);
Gate pyth_r(int q);
Gate pyth_i(int q);
Gate x(int q);
Gate z(int q);
// Throws when the matrix is not unitary within kUnitaryTol.
Gate custom(const Mat& u, std::vector<int> targets);
// Like custom, on any number of targets up to kMaxUnitaryQubits.
Gate block(const Mat& u, std::vector<int> targets);
// Any number of targets; control values default to all 1.
Gate controlled(const Mat& u, std::vector<int> controls, std::vector<int> targets,
                std::vector<int> control_values = {});
Mat pyth_r_matrix();
Mat pyth_i_matrix();
}  // namespace gates

struct Register {
  int start;
  int size;
};

class Circuit {
 public:
  explicit Circuit(int num_qubits, int output_qubit = 0);

  Circuit& add(Gate g);
  // Appends `other` with its qubit i mapped to qubit_map[i].
  Circuit& append(const Circuit& other, const std::vector<int>& qubit_map);
  Circuit& append(const Circuit& other);
  Circuit& set_register(const std::string& name, int start, int size);
  Circuit& set_output_qubit(int q);

  int num_qubits() const { return num_qubits_; }
  int output_qubit() const { return output_qubit_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  const std::map<std::string, Register>& registers() const { return registers_; }

  Circuit inverse() const;
  int pythagorean_count() const;
  bool exact_compatible() const;

 private:
  void check_qubit(int q) const;

  int num_qubits_;
  int output_qubit_;
  std::vector<Gate> gates_;
  std::map<std::string, Register> registers_;
};

// Floating-point state-vector evolution.
void apply_gate(const Gate& g, Vec& state, int num_qubits);
void apply_gate(const Gate& g, Mat& columns, int num_qubits);
PureState simulate(const Circuit& c, const PureState& input);
Vec simulate_vector(const Circuit& c, Vec state);
Mat unitary_of(const Circuit& c);

// Exact amplitude (re + i im) / 5^e in canonical form: e == 0 or not both
// numerators divisible by 5.
struct ExactAmplitude {
  mpz_class re;
  mpz_class im;
  int exponent = 0;

  void canonicalize();
  cplx to_complex() const;
  mpq_class norm_squared() const;
  bool operator==(const ExactAmplitude& o) const;
};

// Whole-register exact state sharing one denominator exponent.
class ExactState {
 public:
  ExactState(int num_qubits, std::size_t basis_index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return re_.size(); }
  int shared_exponent() const { return exponent_; }
  ExactAmplitude amplitude(std::size_t i) const;
  Vec to_vector() const;
  // Probability that qubit q reads `outcome`.
  mpq_class probability(int qubit, int outcome) const;
  mpq_class total_probability() const;

  void apply(const Gate& g);

  // Raw numerators over 5^shared_exponent.
  const std::vector<mpz_class>& re() const { return re_; }
  const std::vector<mpz_class>& im() const { return im_; }

 private:
  void reduce();

  int num_qubits_;
  int exponent_ = 0;
  std::vector<mpz_class> re_;
  std::vector<mpz_class> im_;
};

// Throws Unsupported on gates outside {CNOT, PYTH_R, PYTH_I, X}.
ExactState simulate_exact(const Circuit& c, std::size_t basis_input = 0);

enum class Backend { Float, Exact };
// Dispatching form; the exact backend requires a computational-basis input
// and returns its result converted to floating point.
PureState simulate(const Circuit& c, const PureState& input, Backend backend);

struct ExactAcceptance {
  mpq_class probability;
  int pythagorean_gates;      // l
  int denominator_exponent;   // reduced denominator is 5^this
};

// Probability that the output qubit reads 1 on the all-zero input.
ExactAcceptance exact_acceptance(const Circuit& c);

std::string rational_to_string(const mpq_class& q);
mpq_class rational_from_string(const std::string& s);

struct SubstitutionReport {
  double op_norm_gap;
  double resulting_state_td;
  double acceptance;            // of the unperturbed circuit
  bool inequality_holds;        // td <= gap + 1e-9
  double normalized_bound;      // 2 gap / sqrt(acceptance)
};

// Compares the post-selected resulting states of two circuits on the same
// input. Throws ZeroBranch if either circuit never accepts.
SubstitutionReport substitution_error(const Circuit& c, const Circuit& perturbed,
                                      const PureState& input);

// Replaces gate `index` by gate * exp(i eps K) for a random Hermitian K,
// scaled so that the operator-norm distance of the gate is `distance`.
Circuit perturb_gate(const Circuit& c, std::size_t index, double distance, Rng& rng);

// Random circuit over {H, T, Tdg, X, Z, CNOT, random single-qubit unitary}.
Circuit random_circuit(int num_qubits, int num_gates, Rng& rng);
// Random circuit over {CNOT, PYTH_R, PYTH_I, X} with exactly
// `pythagorean_gates` Pythagorean gates.
Circuit random_pythagorean_circuit(int num_qubits, int pythagorean_gates, int other_gates, Rng& rng);

}  // namespace sqlab
