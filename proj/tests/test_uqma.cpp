// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "sqlab/linalg.hpp"
#include "sqlab/uqma.hpp"

namespace sqlab {
namespace {

PureState fixed_witness() {
  Vec w(2);
  w << 0.6, cplx(0.0, 0.8);
  return PureState(w);
}

TEST(Evolution, MatchesPadeExponential) {
  // Independent route: Eigen's scaling-and-squaring exponential.
  Rng rng(21);
  for (int d : {2, 5, 12}) {
    Mat h = random_hermitian(static_cast<std::size_t>(d), rng);
    const double t = 0.37;
    Mat ref = (cplx(0, -t) * h).exp();
    EXPECT_LE(op_norm(exact_evolution(h, t) - ref), 1e-11) << d;
  }
}

TEST(Evolution, RejectsBadInput) {
  EXPECT_THROW(exact_evolution(Mat::Ones(2, 3), 1.0), Error);
  Mat nh(2, 2);
  nh << 0, 1, 0, 0;
  EXPECT_THROW(exact_evolution(nh, 1.0), Error);
  EXPECT_THROW(choose_time(Mat::Zero(3, 3)), Error);
}

TEST(Evolution, ChooseTimeBoundsPhase) {
  Rng rng(22);
  Mat h = random_hermitian(6, rng);
  const double t = choose_time(h);
  EXPECT_NEAR(t, M_PI / (6 * h.cwiseAbs().maxCoeff()), 1e-15);
  EXPECT_LE(hermitian_eigenvalues(h).cwiseAbs().maxCoeff() * t, M_PI + 1e-12);
}

TEST(Planted, AcceptanceParameters) {
  for (double nu : {0.0, 0.1, 0.3}) {
    VerifierSpec v = planted_verifier(fixed_witness(), nu, 0.25);
    EXPECT_NEAR(acceptance_probability(v, fixed_witness()), 1.0 - nu, 1e-12);
    Vec perp(2);
    perp << cplx(0.0, 0.8), 0.6;  // <w|perp> = 0
    EXPECT_NEAR(acceptance_probability(v, PureState(perp)), 0.25, 1e-12);
    EXPECT_NEAR(encoding_svd(v).max_acceptance(), 1.0 - nu, 1e-12);
  }
  EXPECT_EQ(planted_verifier(fixed_witness(), 0.1, 0.2, 3).circuit.size(), 7u);
}

class HadamardFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    base = planted_verifier(fixed_witness(), 0.0, 0.3);
    ht = build_hadamard_test_verifier(build_weighted_kitaev(base, 0.1), base, fixed_witness());
  }
  VerifierSpec base;
  HadamardTestVerifier ht;
};

TEST_F(HadamardFixture, EigenvectorAcceptance) {
  // An eigenvector with eigenvalue lambda accepts with (1 + cos(lambda t)) / 2.
  for (int j = 0; j < 4; ++j) {
    const double lam = ht.spectrum.values(j);
    EXPECT_NEAR(acceptance_probability(ht.assembled, ht.embed(ht.eigenvector(j))), (1 + std::cos(lam * ht.t)) / 2,
                1e-10);
  }
}

TEST_F(HadamardFixture, MixtureAcceptanceProperty) {
  Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    Vec psi = random_gaussian_vector(static_cast<std::size_t>(ht.evolution.rows()), rng).normalized();
    EXPECT_NEAR(acceptance_probability(ht.assembled, ht.embed(psi)), ht.acceptance_formula(psi), 1e-10);
    EXPECT_NEAR(trace_distance(resulting_state(ht.assembled, ht.embed(psi)), ht.resulting_state_formula(psi)), 0.0,
                1e-7);
  }
}

TEST_F(HadamardFixture, FrozenSpectrumAndTime) {
  EXPECT_NEAR(ht.lambda0(), 0.0, 1e-12);
  EXPECT_NEAR(ht.lambda1(), 0.0010854555837005082, 1e-12);
  EXPECT_NEAR(ht.t, 0.12566370614359174, 1e-15);  // pi / (20 * 1.25)
  EXPECT_EQ(ht.clock_qubits, 3);
}

TEST_F(HadamardFixture, CertificateBounds) {
  for (double a : {1.0, 0.99, 0.95, 0.9, 0.5}) {
    CertificateReport c = soundness_certificate(ht, a);
    EXPECT_NEAR(c.acceptance, c.acceptance_formula, 1e-9);
    EXPECT_LE(c.formula_td, 1e-7);
    EXPECT_TRUE(c.f2_bound_holds) << a;
    EXPECT_TRUE(c.td_fvdg_holds) << a;
  }
}

TEST_F(HadamardFixture, LiteralTdBoundFailsAtAlphaOne) {
  // The td <= 1 - F direction does not follow from the fidelity bound.
  CertificateReport c = soundness_certificate(ht, 1.0);
  EXPECT_NEAR(c.td, 0.086846584384283498, 1e-9);
  EXPECT_FALSE(c.td_bound_holds);
}

TEST(GapFormula, QuarterIdentityProperty) {
  // 2 + 2a - (1 + b)(2 + a - b) = (a - b)(1 - b) for all a, b.
  Rng rng(24);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng), b = u(rng);
    const double cp = (1 + a) / 2, sp = (1 + b) * (2 + a - b) / 4;
    EXPECT_NEAR(cp - sp, (1 - b) * (a - b) / 4, 1e-14);
  }
}

TEST(GapFormula, LongestTimeGivesLargestGap) {
  VerifierSpec base = planted_verifier(fixed_witness(), 0.0, 0.3);
  WeightedKitaevHamiltonian h = build_weighted_kitaev(base, 0.1);
  const double t_max = M_PI / hermitian_eigenvalues(h.h).maxCoeff();
  HadamardTestVerifier def = build_hadamard_test_verifier(h, base, fixed_witness());
  HadamardTestVerifier ht = build_hadamard_test_verifier(h, base, fixed_witness(), t_max);
  GapFormula g = completeness_soundness_gap(ht);
  EXPECT_TRUE(g.quarter_match);
  EXPECT_TRUE(g.gap_positive);
  // nu = 0: the gap is (1 - cos(lambda1 t))^2 / 4.
  const double b = std::cos(ht.lambda1() * t_max);
  EXPECT_NEAR(g.gap, (1 - b) * (1 - b) / 4, 1e-12);
  EXPECT_GT(g.gap, completeness_soundness_gap(def).gap);
  EXPECT_THROW(build_hadamard_test_verifier(h, base, fixed_witness(), 1.01 * t_max), Error);
}

}  // namespace
}  // namespace sqlab
