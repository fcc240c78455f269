// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "sqlab/linalg.hpp"
#include "sqlab/verifier.hpp"

namespace sqlab {
namespace {

TEST(ToyVerifier, AcceptanceMatchesParameters) {
  VerifierSpec v = toy_verifier(0.7, 0.4, 2);
  EXPECT_NEAR(acceptance_probability(v, PureState::basis(2, 0)), 0.7, 1e-12);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_NEAR(acceptance_probability(v, PureState::basis(2, j)), 0.4, 1e-12);
  // Singular values of M are sqrt of the basis acceptances.
  EncodingSVD e = encoding_svd(v);
  EXPECT_NEAR(e.singular_values(0), std::sqrt(0.7), 1e-12);
  EXPECT_NEAR(e.singular_values(1), std::sqrt(0.4), 1e-12);
  EXPECT_NEAR(e.max_acceptance(), 0.7, 1e-12);
}

TEST(ToyVerifier, ResultingStateIsTarget) {
  VerifierSpec v = toy_verifier(0.7, 0.4, 1, 0.9);
  Vec t(2);
  t << std::cos(0.45), std::sin(0.45);  // RY(0.9)|0>
  Rng rng(1);
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(trace_distance(PureState(t), resulting_state(v, random_pure_state(1, rng))), 0.0, 1e-7);
  }
}

TEST(Acceptance, MixedWitnessIsAverage) {
  VerifierSpec v = toy_verifier(0.8, 0.2, 1);
  EXPECT_NEAR(acceptance_probability(v, DensityMatrix::maximally_mixed(1)), 0.5, 1e-12);
}

TEST(Acceptance, PureAndMatrixRoutesAgree) {
  // |M w|^2 computed from the projected matrix equals the simulated value.
  Rng rng(2);
  VerifierSpec v = toy_verifier(0.9, 0.3, 2);
  Mat m = projected_matrix(v);
  for (int i = 0; i < 10; ++i) {
    PureState w = random_pure_state(2, rng);
    EXPECT_NEAR((m * w.amplitudes()).squaredNorm(), acceptance_probability(v, w), 1e-12);
  }
}

TEST(RandomGuess, RankOneMatchesLambdaMax) {
  // Only W = 0 accepts: M^dag M has rank one and both sides coincide.
  VerifierSpec v = toy_verifier(0.6, 0.0, 2);
  RandomGuessReport r = random_guess_acceptance(v);
  EXPECT_NEAR(r.value, 0.6 / 4.0, 1e-12);
  EXPECT_NEAR(r.lambda_max, 0.6, 1e-12);
  EXPECT_TRUE(r.lower_bound_ok);
}

TEST(RandomGuess, HigherRankIsStrictlyAbove) {
  RandomGuessReport r = random_guess_acceptance(toy_verifier(0.6, 0.3, 2));
  EXPECT_NEAR(r.value, (0.6 + 3 * 0.3) / 4.0, 1e-12);
  EXPECT_GT(r.value, r.lambda_max / 4.0);
}

TEST(Embedding, MultiplicativityProperty) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    Circuit c = random_circuit(2, 6, rng);
    const double gamma = circuit_acceptance(c, PureState::zeros(2));
    if (gamma < 1e-6) continue;
    DensityMatrix rho = circuit_resulting_state(c, PureState::zeros(2), {});
    PureState target = PureState::normalized(hermitian_eig(rho.matrix()).vectors.col(1));
    VerifierSpec v = embed_statebqp(c, target, gamma, std::min(1.0, trace_distance(target, rho) + 1e-9), 2);
    for (int j = 0; j < 4; ++j) {
      PureState w = random_pure_state(2, rng);
      EXPECT_NEAR(acceptance_probability(v, w), std::norm(w[0]) * gamma, 1e-12);
      if (std::norm(w[0]) > 1e-3) {
        EXPECT_NEAR(trace_distance(resulting_state(v, w), rho), 0.0, 1e-7);
      }
    }
    EXPECT_TRUE(soundness_audit(v, rng, 50).passed());
  }
}

TEST(ForcePerfectCompleteness, MixtureBoundProperty) {
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    Circuit c = random_circuit(2, 6, rng);
    const double gamma = circuit_acceptance(c, PureState::zeros(2));
    if (gamma < 1e-6 || gamma > 1.0 - 1e-6) continue;
    DensityMatrix acc = circuit_resulting_state(c, PureState::zeros(2), {});
    PureState target = PureState::normalized(hermitian_eig(acc.matrix()).vectors.col(1));
    const double delta = trace_distance(target, acc);
    Circuit f = force_perfect_completeness(c);
    EXPECT_NEAR(circuit_acceptance(f, PureState::zeros(3)), 1.0, 1e-12);
    // The forced state is gamma * accepted + (1 - gamma) * rejected.
    DensityMatrix rej = circuit_resulting_state(c, PureState::zeros(2), {}, 0);
    DensityMatrix forced = circuit_resulting_state(f, PureState::zeros(3), {c.output_qubit()});
    EXPECT_NEAR(trace_distance(forced, mix({gamma, 1.0 - gamma}, {acc, rej})), 0.0, 1e-7);
    EXPECT_LE(trace_distance(target, forced), gamma * delta + 1.0 - gamma + 1e-10);
  }
}

TEST(Audit, DetectsWrongTarget) {
  VerifierSpec v = toy_verifier(0.7, 0.4, 1, 1.1);
  v.target = PureState::basis(1, 1);
  v.distance = 0.1;
  Rng rng(5);
  SoundnessReport r = soundness_audit(v, rng, 20);
  EXPECT_FALSE(r.passed());
  EXPECT_GT(r.max_td, 0.1);
}

TEST(Validate, RejectsMalformedSpecs) {
  VerifierSpec v = toy_verifier(0.7, 0.4);
  VerifierSpec bad = v;
  bad.witness_qubits = 5;
  EXPECT_THROW(bad.validate(), Error);
  bad = v;
  bad.traced_qubits = {bad.circuit.output_qubit()};
  EXPECT_THROW(bad.validate(), Error);
  bad = v;
  bad.soundness = 0.9;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(LeftVectors, SingularRelation) {
  // M r_i = sigma_i l_i for every singular triple.
  VerifierSpec v = toy_verifier(0.9, 0.25, 2);
  EncodingSVD e = encoding_svd(v);
  Mat m = projected_matrix(v);
  for (Eigen::Index i = 0; i < e.singular_values.size(); ++i) {
    EXPECT_TRUE((m * e.right.col(i)).isApprox(e.singular_values(i) * e.left.col(i), 1e-10));
  }
}

}  // namespace
}  // namespace sqlab
