// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "sqlab/circuits.hpp"
#include "sqlab/linalg.hpp"
#include "sqlab/verifier.hpp"

namespace sqlab {
namespace {

double circuit_acceptance_float(const Circuit& c) { return circuit_acceptance(c, PureState::zeros(c.num_qubits())); }

TEST(Gates, PythagoreanMatricesAreExact) {
  Mat r(2, 2), i(2, 2);
  r << 4, -3, 3, 4;
  i << 4, cplx(0, 3), cplx(0, 3), 4;
  EXPECT_TRUE(gates::pyth_r_matrix().isApprox(r / 5.0, 1e-15));
  EXPECT_TRUE(gates::pyth_i_matrix().isApprox(i / 5.0, 1e-15));
}

TEST(Gates, RejectNonUnitary) {
  EXPECT_THROW(gates::custom(Mat::Ones(2, 2), {0}), Error);
  EXPECT_THROW(gates::custom(Mat::Identity(3, 3), {0}), Error);
}

TEST(Circuit, CnotMatrixInBigEndianOrder) {
  Circuit c(2);
  c.add(gates::cnot(0, 1));
  Mat expected = Mat::Zero(4, 4);
  expected(0, 0) = expected(1, 1) = 1;
  expected(3, 2) = expected(2, 3) = 1;
  EXPECT_TRUE(unitary_of(c).isApprox(expected));
}

TEST(Circuit, SingleQubitGateOnSecondQubitIsKronIdentity) {
  Circuit c(2);
  c.add(gates::h(1));
  Mat h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  EXPECT_TRUE(unitary_of(c).isApprox(kron(Mat::Identity(2, 2), h), 1e-14));
}

TEST(Circuit, ControlledOnZeroValue) {
  Mat x(2, 2);
  x << 0, 1, 1, 0;
  Circuit c(2);
  c.add(gates::controlled(x, {0}, {1}, {0}));
  PureState out = simulate(c, PureState::basis(2, 0));
  EXPECT_NEAR(std::abs(out[1]), 1.0, 1e-15);
}

TEST(Circuit, MultiTargetBlockMatchesKron) {
  Rng rng(3);
  Mat a = random_unitary(2, rng), b = random_unitary(2, rng);
  Circuit c1(3), c2(3);
  c1.add(gates::block(kron(a, b), {0, 2}));
  c2.add(gates::custom(a, {0}));
  c2.add(gates::custom(b, {2}));
  EXPECT_TRUE(unitary_of(c1).isApprox(unitary_of(c2), 1e-12));
}

TEST(Circuit, InverseIsIdentityProperty) {
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    Circuit c = random_circuit(3, 12, rng);
    Circuit both = c;
    both.append(c.inverse());
    EXPECT_TRUE(unitary_of(both).isApprox(Mat::Identity(8, 8), 1e-10)) << t;
    EXPECT_TRUE(is_unitary(unitary_of(c), 1e-10));
  }
}

TEST(Exact, SinglePythagoreanAmplitudes) {
  Circuit c(1);
  c.add(gates::pyth_r(0));
  ExactState s = simulate_exact(c);
  EXPECT_EQ(rational_to_string(s.probability(0, 1)), "9/25");
  EXPECT_EQ(s.amplitude(0).re, 4);
  EXPECT_EQ(s.amplitude(1).re, 3);
  EXPECT_EQ(s.amplitude(0).exponent, 1);
}

TEST(Exact, TwoPythagoreanAmplitudes) {
  Circuit c(1);
  c.add(gates::pyth_r(0));
  c.add(gates::pyth_r(0));
  ExactState s = simulate_exact(c);
  // [[4,-3],[3,4]]^2 / 25 applied to |0> = (7, 24) / 25.
  EXPECT_EQ(s.amplitude(0).re, 7);
  EXPECT_EQ(s.amplitude(1).re, 24);
  ExactAcceptance a = exact_acceptance(c);
  EXPECT_EQ(a.probability, mpq_class(576, 625));
  EXPECT_EQ(a.pythagorean_gates, 2);
  EXPECT_EQ(a.denominator_exponent, 4);
}

TEST(Exact, RejectsNonExactGates) {
  Circuit c(1);
  c.add(gates::h(0));
  EXPECT_THROW(simulate_exact(c), Error);
}

TEST(Exact, DenominatorBoundAndFloatAgreementProperty) {
  Rng rng(2025);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + t % 4;
    Circuit c = random_pythagorean_circuit(n, t % 9, 6, rng);
    ExactAcceptance a = exact_acceptance(c);
    EXPECT_LE(a.denominator_exponent, 2 * a.pythagorean_gates);
    EXPECT_NEAR(a.probability.get_d(), circuit_acceptance_float(c), 1e-12);
    ExactState s = simulate_exact(c);
    EXPECT_EQ(s.total_probability(), 1);
    EXPECT_TRUE(s.to_vector().isApprox(simulate(c, PureState::zeros(n)).amplitudes(), 1e-12));
  }
}

TEST(Exact, CanonicalAmplitudes) {
  ExactAmplitude a{25, 50, 2};
  a.canonicalize();
  EXPECT_EQ(a.exponent, 0);
  EXPECT_EQ(a.re, 1);
  EXPECT_EQ(a.im, 2);
  EXPECT_EQ(a.norm_squared(), 5);
}

TEST(Rational, StringRoundTrip) {
  mpq_class q(12, 50);
  q.canonicalize();
  EXPECT_EQ(rational_to_string(q), "6/25");
  EXPECT_EQ(rational_from_string("6/25"), q);
  EXPECT_EQ(rational_to_string(mpq_class(4, 4)), "1");
  EXPECT_THROW(rational_from_string("6/x"), Error);
}

TEST(Substitution, NormalizedBoundAlwaysHolds) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    Circuit c = random_circuit(3, 8, rng);
    if (circuit_acceptance_float(c) < 1e-3) continue;
    Circuit p = perturb_gate(c, static_cast<std::size_t>(t) % c.size(), 0.05, rng);
    SubstitutionReport r = substitution_error(c, p, PureState::zeros(3));
    EXPECT_NEAR(r.op_norm_gap, 0.05, 1e-9);
    EXPECT_LE(r.resulting_state_td, r.normalized_bound + 1e-9);
  }
}

TEST(Substitution, IdenticalCircuitsHaveZeroDistance) {
  Rng rng(6);
  Circuit c = random_circuit(2, 5, rng);
  SubstitutionReport r = substitution_error(c, c, PureState::zeros(2));
  EXPECT_NEAR(r.op_norm_gap, 0.0, 1e-12);
  EXPECT_NEAR(r.resulting_state_td, 0.0, 1e-7);
  EXPECT_TRUE(r.inequality_holds);
}

}  // namespace
}  // namespace sqlab
