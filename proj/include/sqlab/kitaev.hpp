// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "sqlab/verifier.hpp"

namespace sqlab {

inline constexpr std::size_t kMaxKitaevDim = std::size_t{1} << 13;
inline constexpr double kDegeneracyTol = 1e-9;
// Smallest c0 = gap * T^3 / (nu * delta1) seen by sweep_gap_constant()
// (seed 2024, 120 instances: min 1.249e-3 at T = 5), halved.
// `sqlab kitaev --sweep` reruns it.
inline constexpr double kGapConstantFloor = 6.2e-4;

// Lazy Metropolis walk on nodes 0..T: each step proposes t +/- 1 with
// weight 1/4 and accepts with min{1, pi_target / pi_current}.
struct PathChain {
  int T = 0;
  RVec pi;
  RMat P;

  // Row sums, reversibility and stationarity within `tol`.
  void validate(double tol = 1e-12) const;
  // 1 - (second largest eigenvalue of P).
  double spectral_gap() const;
};

PathChain build_path_chain(const RVec& pi);
// (delta1/T, ..., delta1/T, 1 - delta1); T = 0 gives the single node.
RVec weighted_distribution(int T, double delta1);

// I - D^{1/2} P D^{-1/2}.
RMat path_hamiltonian(const PathChain& chain);

// Conductance of the prefix S = {0..cut}; on a path the prefix cuts are
// the only ones that matter for the minimum.
double conductance(const PathChain& chain, int cut);
struct CutConductance {
  int cut;
  double phi;
};
CutConductance min_conductance(const PathChain& chain);

// Exact versions over rational pi (same Metropolis rule).
mpq_class exact_conductance(const std::vector<mpq_class>& pi, int cut);
std::pair<int, mpq_class> exact_min_conductance(const std::vector<mpq_class>& pi);
std::vector<mpq_class> exact_weighted_distribution(int T, const mpq_class& delta1);

// H = H_prop + H_in + H_out on clock (x) work, index t * 2^n + x.
struct WeightedKitaevHamiltonian {
  Mat h;
  Mat h_in;
  Mat h_prop;
  Mat h_out;
  int T = 0;
  int work_qubits = 0;
  double delta1 = 0.0;
  double nu = 0.0;  // 1 - max acceptance of the verifier
  PathChain chain;
};

WeightedKitaevHamiltonian build_weighted_kitaev(const VerifierSpec& v, double delta1);

// sum_t sqrt(pi_t) |t> (x) U_t ... U_1 |input>, where `input` covers all
// circuit qubits (witness and ancillas). A plain unit vector: (T+1) 2^n
// need not be a power of two.
Vec history_state(const Circuit& c, const PureState& input, const RVec& pi);
// Witness padded with zero ancillas.
Vec history_state(const VerifierSpec& v, const PureState& witness, const RVec& pi);

// Work-register state after tracing out the clock.
DensityMatrix clock_traced(const Vec& history, int T, int work_qubits);

struct GapReport {
  double nu = 0.0;
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double gap = 0.0;
  double path_gap = 0.0;
  // Delta(H_path) (1 - sqrt(1 - nu)) / 4 * min{pi_0, pi_T}
  double gap_bound = 0.0;
  bool gap_bound_holds = false;
  // gap * T^3 / (nu * delta1); unset when nu == 0.
  std::optional<double> c0;
  bool frustration_free = false;
  bool floor_ok = true;
};

// Throws Degenerate when the two lowest eigenvalues are within
// kDegeneracyTol.
GapReport verify_gap_bound(const WeightedKitaevHamiltonian& h);

// "row col re im" per entry above `tol` in magnitude.
void write_triplets(std::ostream& os, const Mat& m, double tol = 1e-15);

struct SweepRow {
  int T = 0;
  double delta1 = 0.0;
  int trial = 0;
  double nu = 0.0;
  double gap = 0.0;
  double c0 = 0.0;
};

struct GapSweep {
  std::vector<SweepRow> rows;
  double min_c0 = 0.0;
};

// Random 2-qubit verifiers (witness qubit 0, output ancilla qubit 1) for
// T in 2..6 and delta1 in {0.05, 0.1, 0.2}. Instances with nu < 1e-3,
// nu > 0.999 or a degenerate ground space are redrawn.
GapSweep sweep_gap_constant(std::uint64_t seed = 2024, int trials = 8);

// Appends `count` identity gates on qubit 0: same acceptance, larger T.
Circuit pad_with_identities(const Circuit& c, int count);

}  // namespace sqlab
