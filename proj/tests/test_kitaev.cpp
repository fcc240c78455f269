// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "sqlab/kitaev.hpp"
#include "sqlab/linalg.hpp"
#include "sqlab/uqma.hpp"

namespace sqlab {
namespace {

PureState fixed_witness() {
  Vec w(2);
  w << 0.6, cplx(0.0, 0.8);
  return PureState(w);
}

TEST(Distribution, WeightedShape) {
  RVec pi = weighted_distribution(4, 0.2);
  ASSERT_EQ(pi.size(), 5);
  for (int t = 0; t < 4; ++t) EXPECT_NEAR(pi(t), 0.05, 1e-15);
  EXPECT_NEAR(pi(4), 0.8, 1e-15);
  std::vector<mpq_class> ex = exact_weighted_distribution(4, mpq_class(1, 5));
  EXPECT_EQ(ex[0], mpq_class(1, 20));
  EXPECT_EQ(ex[4], mpq_class(4, 5));
}

TEST(PathChain, TwoNodeTransitionsByHand) {
  // pi = (0.1, 0.9): P01 = 1/4, P10 = (1/4)(0.1/0.9), lazy diagonal.
  PathChain ch = build_path_chain(weighted_distribution(1, 0.1));
  EXPECT_NEAR(ch.P(0, 1), 0.25, 1e-15);
  EXPECT_NEAR(ch.P(1, 0), 0.25 * 0.1 / 0.9, 1e-15);
  EXPECT_NEAR(ch.P(0, 0), 0.75, 1e-15);
  // Spectral gap of a 2-state chain is P01 + P10.
  EXPECT_NEAR(ch.spectral_gap(), 0.25 + 0.25 / 9.0, 1e-12);
}

TEST(PathChain, InvariantsProperty) {
  for (int T = 2; T <= 40; T += 3) {
    for (double d1 : {0.05, 0.1, 0.2}) {
      PathChain ch = build_path_chain(weighted_distribution(T, d1));
      EXPECT_NO_THROW(ch.validate(1e-12));
      RealSymmetricEig e = symmetric_eig(path_hamiltonian(ch));
      EXPECT_NEAR(e.values(0), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(e.vectors.col(0).dot(ch.pi.cwiseSqrt())), 1.0, 1e-10);
      EXPECT_NEAR(e.values(1), ch.spectral_gap(), 1e-10);
      const double phi = min_conductance(ch).phi;
      EXPECT_LE(0.5 * phi * phi, ch.spectral_gap());
      EXPECT_LE(ch.spectral_gap(), 2.0 * phi + 1e-12);
    }
  }
}

TEST(PathChain, MinConductanceIsExactlyQuarterOverT) {
  for (int T = 2; T <= 30; ++T) {
    for (const mpq_class& d : {mpq_class(1, 20), mpq_class(1, 10), mpq_class(1, 5)}) {
      auto [cut, phi] = exact_min_conductance(exact_weighted_distribution(T, d));
      EXPECT_EQ(phi, mpq_class(1, 4 * T)) << T;
      EXPECT_EQ(cut, T - 1);
    }
  }
}

TEST(PathChain, RejectsBadDistribution) {
  RVec pi(3);
  pi << 0.5, 0.6, -0.1;
  EXPECT_THROW(build_path_chain(pi), Error);
}

TEST(Kitaev, TermsSumAndArePsd) {
  VerifierSpec v = planted_verifier(fixed_witness(), 0.2, 0.3);
  WeightedKitaevHamiltonian h = build_weighted_kitaev(v, 0.1);
  EXPECT_TRUE(h.h.isApprox(h.h_in + h.h_prop + h.h_out, 1e-14));
  for (const Mat* m : {&h.h, &h.h_in, &h.h_prop, &h.h_out}) {
    EXPECT_TRUE(is_hermitian(*m, 1e-12));
    EXPECT_GE(hermitian_eigenvalues(*m)(0), -1e-12);
  }
  EXPECT_NEAR(h.nu, 0.2, 1e-12);
  EXPECT_EQ(h.h.rows(), (h.T + 1) * 4);
}

TEST(Kitaev, PerfectCompletenessGroundStateIsHistoryState) {
  for (int pad : {0, 1, 2}) {
    for (double d1 : {0.05, 0.1, 0.2}) {
      VerifierSpec v = planted_verifier(fixed_witness(), 0.0, 0.3, pad);
      WeightedKitaevHamiltonian h = build_weighted_kitaev(v, d1);
      HermitianEig e = hermitian_eig(h.h);
      EXPECT_NEAR(e.values(0), 0.0, 1e-10);
      Vec hist = history_state(v, fixed_witness(), h.chain.pi);
      EXPECT_NEAR(hist.norm(), 1.0, 1e-12);
      EXPECT_NEAR((h.h * hist).norm(), 0.0, 1e-10);
      EXPECT_NEAR(std::norm(e.vectors.col(0).dot(hist)), 1.0, 1e-10);
    }
  }
}

TEST(Kitaev, HistoryEnergyIsOutputPenalty) {
  // <hist|H|hist> = pi_T * nu: only H_out sees the history state.
  VerifierSpec v = planted_verifier(fixed_witness(), 0.3, 0.1);
  WeightedKitaevHamiltonian h = build_weighted_kitaev(v, 0.1);
  Vec hist = history_state(v, fixed_witness(), h.chain.pi);
  EXPECT_NEAR(std::real(hist.dot(h.h * hist)), h.chain.pi(h.T) * 0.3, 1e-12);
}

TEST(Kitaev, GapBoundAndFrozenValues) {
  VerifierSpec v = planted_verifier(fixed_witness(), 0.2, 0.3);
  GapReport g = verify_gap_bound(build_weighted_kitaev(v, 0.1));
  EXPECT_TRUE(g.gap_bound_holds);
  EXPECT_TRUE(g.floor_ok);
  // Recorded from this implementation.
  EXPECT_NEAR(g.lambda0, 0.0002980410195479483, 1e-9);
  EXPECT_NEAR(g.gap, 0.00078741456415242872, 1e-9);
  ASSERT_TRUE(g.c0.has_value());
  EXPECT_NEAR(*g.c0, 2.5197266052877709, 1e-6);
}

TEST(Kitaev, ClockTracedHistoryIsMixture) {
  // Tracing the clock leaves sum_t pi_t |psi_t><psi_t|, trace one.
  VerifierSpec v = planted_verifier(fixed_witness(), 0.0, 0.3);
  WeightedKitaevHamiltonian h = build_weighted_kitaev(v, 0.1);
  DensityMatrix rho = clock_traced(history_state(v, fixed_witness(), h.chain.pi), h.T, 2);
  EXPECT_NEAR(std::real(rho.matrix().trace()), 1.0, 1e-12);
  EXPECT_EQ(rho.num_qubits(), 2);
}

TEST(Sweep, FloorComesFromSweep) {
  GapSweep s = sweep_gap_constant(2024, 8);
  EXPECT_EQ(s.rows.size(), 120u);
  EXPECT_NEAR(s.min_c0, 0.0012487677597473423, 1e-12);
  EXPECT_GE(s.min_c0, kGapConstantFloor);
  EXPECT_NEAR(kGapConstantFloor, s.min_c0 / 2, 1e-5);
}

TEST(Padding, PreservesAcceptance) {
  Rng rng(9);
  Circuit c = random_circuit(2, 5, rng);
  Circuit p = pad_with_identities(c, 3);
  EXPECT_EQ(p.size(), c.size() + 3);
  EXPECT_NEAR(circuit_acceptance(c, PureState::zeros(2)), circuit_acceptance(p, PureState::zeros(2)), 1e-14);
}

TEST(Triplets, Format) {
  Mat m = Mat::Zero(2, 2);
  m(1, 0) = cplx(0.5, -1);
  std::ostringstream os;
  write_triplets(os, m);
  EXPECT_EQ(os.str(), "1 0 0.5 -1\n");
}

}  // namespace
}  // namespace sqlab
