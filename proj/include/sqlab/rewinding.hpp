// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include "sqlab/verifier.hpp"

namespace sqlab {

// Float simulation of the assembled rewinding circuit is limited to this
// many qubits; the exact path has no such limit.
inline constexpr int kMaxRewindSimQubits = 18;

// g(t) = t^3 / 2 - 2 t^2 + 5 t / 2. Throws InvalidArgument outside [0, 1].
mpq_class g_eval(const mpq_class& t);
// g(i / (points - 1)) strictly increasing for i = 0..points-1.
bool monotonicity_check(int points = 1000);
// 1 - (1 - p)(1 - 2p)^{2 iterations}; p must lie in (0, 1).
mpq_class rewinding_success(const mpq_class& p, int iterations);

// Qubit layout shared by Q and the rewound circuit:
//   W [0, m)            classical witness, copied into R
//   O m                 Q's output
//   R [m+1, m+1+n)      the base verifier's qubits
//   S [m+1+n, ... + s)  counter, uniform over {0..2k-1}
//   F1, F2              first measurement (deferred) and final output
struct RewindingLayout {
  int m = 0;
  int n = 0;
  int s = 0;

  int o() const { return m; }
  int r(int q) const { return m + 1 + q; }
  int s_start() const { return m + 1 + n; }
  int f1() const { return m + 1 + n + s; }
  int f2() const { return f1() + 1; }
  int q_width() const { return m + 1 + n + s; }
  int width() const { return q_width() + 2; }
};

// 5^{2l}: acceptance probabilities of an l-Pythagorean-gate circuit are
// k / 5^{2l} for an integer k.
mpz_class acceptance_denominator(int l);
// Counter width ceil(log2 max(2k, 5^{2l})).
int counter_qubits(const mpz_class& k, int l);

// Q on W (x) O (x) R (x) S: copy W into R's witness qubits, prepare S
// uniformly over {0..2k-1}, run V on R, then flip O when R's output is 1
// and S < 5^{2l}. The uniform preparation is a Householder reflection on S
// and the comparator is a sum of disjoint multi-controlled NOTs.
Circuit build_Q(const VerifierSpec& v, const mpz_class& k, RewindingLayout* layout = nullptr);

// Copy O into F1, then (controlled on F1 = 0) Q^dag, 2|0><0| - I on
// O R S, Q; finally F2 = F1 OR O.
Circuit rewound_circuit(const Circuit& q, const RewindingLayout& layout);

struct RewindingVerifier {
  VerifierSpec base;
  mpz_class k;
  int l = 0;
  mpz_class denominator;  // 5^{2l}
  RewindingLayout layout;
  Circuit q{1};
  // Set when k / 5^{2l} < c: the pre-check rejects every input.
  bool rejects = false;
  // Witness register W; resulting state on the base verifier's resulting
  // register. Completeness 1, soundness g(s / c).
  VerifierSpec assembled;
};

// Requires c >= 1/2 (so an accepted claim k satisfies 2k >= 5^{2l}) and
// an exact-gateset base circuit.
RewindingVerifier perfect_completeness_transform(const VerifierSpec& v, const mpz_class& k);

struct ExactRewinding {
  mpq_class base_acceptance;  // Pr[V accepts w]
  mpz_class k_xw;             // base_acceptance * 5^{2l}
  mpq_class q_acceptance;     // Pr[Q accepts]
  mpq_class rewound;          // Pr[rewound verifier accepts]
  bool state_equal = false;   // rewound state on R == V's conditional state, entrywise
};

// Rational evaluation of Q and of one rewinding round on the classical
// witness `witness` (basis index over the m witness qubits). Counter values
// are grouped into the classes {s < 5^{2l}} and {s >= 5^{2l}}, on which
// every operator acts uniformly, so the counter never has to be expanded.
ExactRewinding exact_rewinding(const VerifierSpec& v, std::size_t witness, const mpz_class& k);

struct FloatRewinding {
  double q_acceptance = 0.0;
  double rewound = 0.0;
  double fidelity = 0.0;  // rewound resulting state vs the base verifier's
};

// State-vector run of the assembled circuit. Throws SizeLimit beyond
// kMaxRewindSimQubits.
FloatRewinding float_rewinding(const RewindingVerifier& rv, std::size_t witness);

}  // namespace sqlab
