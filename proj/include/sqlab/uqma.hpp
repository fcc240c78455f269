// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "sqlab/kitaev.hpp"
#include "sqlab/linalg.hpp"

namespace sqlab {

inline constexpr std::size_t kMaxEvolutionDim = std::size_t{1} << 12;

// exp(-iHt) through the eigendecomposition of H.
Mat exact_evolution(const Mat& h, double t);

// pi / (dim * max |H_ij|); dim * max |H_ij| bounds the spectral radius.
double choose_time(const Mat& h);

// One-bit phase estimation against exp(-iHt). Qubit layout of the
// assembled verifier: clock register C (index t), work register W (n
// qubits, index x), so the witness index is t * 2^n + x as in the Kitaev
// Hamiltonian; then the control qubit O. Clock values above T see
// H + (pi / t) I and are never accepted.
struct HadamardTestVerifier {
  WeightedKitaevHamiltonian hamiltonian;
  VerifierSpec base;
  double t = 0.0;
  HermitianEig spectrum;
  Mat evolution;  // on the (T+1) 2^n Kitaev space
  int clock_qubits = 0;
  VerifierSpec assembled;
  PureState unique_witness = PureState::zeros(1);  // |w> (x) |0^k> on W
  // False when s' >= c', in which case `assembled` carries s = 0.
  bool promise_valid = false;

  double lambda0() const { return spectrum.values(0); }
  double lambda1() const { return spectrum.values(1); }
  // Kitaev-space vector -> witness register of the assembled verifier.
  PureState embed(const Vec& psi) const;
  Vec eigenvector(int j) const { return spectrum.vectors.col(j); }
  // 1/2 + 1/2 Re <psi| e^{-iHt} |psi>
  double acceptance_formula(const Vec& psi) const;
  // V^dag Tr_C((I + E) psi psi^dag (I + E)^dag) V / (4 p)
  DensityMatrix resulting_state_formula(const Vec& psi) const;
};

// `witness` is the unique witness |w> of `base` (its m witness qubits).
// Leaving `t` unset uses choose_time(h.h).
HadamardTestVerifier build_hadamard_test_verifier(const WeightedKitaevHamiltonian& h, const VerifierSpec& base,
                                                  const PureState& witness, std::optional<double> t = {});

struct GapFormula {
  double c_prime = 0.0;   // (1 + cos(lambda0 t)) / 2
  double s_prime = 0.0;   // (1 + cos(lambda1 t))(2 + cos(lambda0 t) - cos(lambda1 t)) / 4
  double gap = 0.0;
  double product = 0.0;   // (1 - cos(lambda1 t))(cos(lambda0 t) - cos(lambda1 t))
  bool literal_match = false;  // |gap - product| <= 1e-8
  bool quarter_match = false;  // |gap - product / 4| <= 1e-8
  bool gap_positive = false;
};

// Throws Degenerate when lambda1 - lambda0 <= kDegeneracyTol.
GapFormula completeness_soundness_gap(const HadamardTestVerifier& v);

struct CertificateReport {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double alpha_norm = 0.0;  // sum over the whole eigenbasis of |alpha_j|^2
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double t = 0.0;
  double acceptance = 0.0;          // simulated on the assembled circuit
  double acceptance_formula = 0.0;  // sum_j |alpha_j|^2 (1 + cos(lambda_j t)) / 2
  double f2 = 0.0;                  // <w| rho |w>
  double td = 0.0;
  double formula_td = 0.0;          // td(simulated rho, closed form)
  double delta0 = 0.0;              // (1 - cos(lambda0 t)) / 2
  double delta1 = 0.0;
  double f2_lower = 0.0;            // |alpha0|^2 / p (1 - delta0)^2 (1 - delta1)
  bool f2_bound_holds = true;       // not asserted at alpha0 == 0
  double td_bound = 0.0;            // 1 - (1 - delta0) sqrt(1 - delta1) |alpha0| / p
  bool td_bound_holds = false;
  double td_fvdg_bound = 0.0;       // sqrt(1 - min(1, f2_lower))
  bool td_fvdg_holds = false;
  double s_prime = 0.0;
  bool premise = false;             // p >= s'
  double delta_prime = 0.0;         // max{delta0, delta1, (cos(lambda0 t) - cos(lambda1 t)) / 2}
  bool td_2delta_holds = false;     // td <= 2 delta' + 1e-6
  double q_ratio = 0.0;             // |alpha0|^2 / p
};

// Witness alpha0 |Omega> + sqrt(1 - alpha0^2) |Phi_1>. Throws ZeroBranch
// when the assembled verifier never accepts it.
CertificateReport soundness_certificate(const HadamardTestVerifier& v, double alpha0);

// Two-qubit verifier with the witness on qubit 0 and the output ancilla on
// qubit 1. Rotating |w> to |0>, a controlled RY accepts it with
// probability 1 - nu and the orthogonal state with probability r; the
// witness rotation is then undone. T = 4 plus `padding` identity gates.
VerifierSpec planted_verifier(const PureState& w, double nu, double r, int padding = 0);

}  // namespace sqlab
