// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "sqlab/linalg.hpp"
#include "sqlab/qstate.hpp"

namespace sqlab {
namespace {

PureState ket(std::initializer_list<cplx> amps) {
  Vec v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (cplx a : amps) v(i++) = a;
  return PureState::normalized(v);
}

TEST(PureState, RejectsBadNorm) {
  Vec v = Vec::Zero(2);
  v(0) = 0.9;
  EXPECT_THROW(PureState{v}, Error);
  EXPECT_THROW(PureState::normalized(Vec::Zero(4)), Error);
  EXPECT_THROW(PureState::normalized(Vec::Ones(3)), Error);
}

TEST(PureState, BasisIndexIsBigEndian) {
  // Qubit 0 is the most significant bit: |10> has index 2.
  PureState s = PureState::basis(2, 2);
  EXPECT_EQ(s[2], cplx(1.0));
  EXPECT_EQ(bit_of(2, 0, 2), 1);
  EXPECT_EQ(bit_of(2, 1, 2), 0);
}

TEST(DensityMatrix, ValidatesInput) {
  Mat m = Mat::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{m}, Error);  // trace 2
  Mat neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix{neg}, Error);
  EXPECT_NO_THROW(DensityMatrix{0.5 * m});
}

TEST(Distance, PureStatesClosedForm) {
  // td(|a>, |b>) = sqrt(1 - |<a|b>|^2) for pure states.
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    PureState a = random_pure_state(2, rng), b = random_pure_state(2, rng);
    const double ov = std::norm(a.amplitudes().dot(b.amplitudes()));
    EXPECT_NEAR(trace_distance(a.density(), b.density()), std::sqrt(1.0 - ov), 1e-10);
    EXPECT_NEAR(trace_distance(a, b.density()), std::sqrt(1.0 - ov), 1e-10);
    EXPECT_NEAR(fidelity(a.density(), b.density()), std::sqrt(ov), 1e-7);
    EXPECT_NEAR(fidelity(a, b.density()), std::sqrt(ov), 1e-12);
  }
}

TEST(Distance, DiagonalStates) {
  // Commuting states: td is half the l1 distance of the spectra.
  Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
  a(0, 0) = 0.75, a(1, 1) = 0.25;
  b(0, 0) = 0.25, b(1, 1) = 0.75;
  EXPECT_NEAR(trace_distance(DensityMatrix(a), DensityMatrix(b)), 0.5, 1e-12);
  // F = sum sqrt(p_i q_i)
  EXPECT_NEAR(fidelity(DensityMatrix(a), DensityMatrix(b)), 2.0 * std::sqrt(0.75 * 0.25), 1e-10);
}

TEST(Distance, FuchsVanDeGraafProperty) {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    DensityMatrix a = random_density_matrix(2, rng), b = random_density_matrix(2, rng, 1 + i % 4);
    EXPECT_TRUE(fuchs_vdg_check(a, b)) << i;
    const double td = trace_distance(a, b);
    EXPECT_GE(td, -1e-12);
    EXPECT_LE(td, 1.0 + 1e-12);
    EXPECT_NEAR(td, trace_distance(b, a), 1e-12);
  }
}

TEST(PartialTrace, BellStateIsMaximallyMixed) {
  PureState bell = ket({1, 0, 0, 1});
  DensityMatrix r0 = partial_trace(bell, {0});
  DensityMatrix r1 = partial_trace(bell.density(), {1});
  EXPECT_TRUE(r0.matrix().isApprox(Mat::Identity(2, 2) * 0.5, 1e-12));
  EXPECT_TRUE(r1.matrix().isApprox(Mat::Identity(2, 2) * 0.5, 1e-12));
}

TEST(PartialTrace, ProductStateKeepsFactor) {
  Rng rng(13);
  PureState a = random_pure_state(1, rng), b = random_pure_state(2, rng);
  PureState ab = a.tensor(b);
  EXPECT_NEAR(trace_distance(partial_trace(ab, {1, 2}), a.density()), 0.0, 1e-10);
  EXPECT_NEAR(trace_distance(partial_trace(ab, {0}), b.density()), 0.0, 1e-10);
  // Pure and density routes agree.
  EXPECT_TRUE(partial_trace(ab, {1}).matrix().isApprox(partial_trace(ab.density(), {1}).matrix(), 1e-12));
}

TEST(PostSelect, ProbabilityAndState) {
  // (|00> + |01> + |11>) / sqrt 3: qubit 0 reads 1 with probability 1/3.
  PureState s = ket({1, 1, 0, 1});
  PostSelection ps = post_select(s, 0, 1);
  EXPECT_NEAR(ps.probability, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(std::real(ps.state.matrix()(1, 1)), 1.0, 1e-12);
  EXPECT_THROW(post_select(PureState::basis(2, 0), 0, 1), Error);
}

TEST(Random, UnitaryAndHermitian) {
  Rng rng(14);
  EXPECT_TRUE(is_unitary(random_unitary(8, rng), 1e-10));
  EXPECT_TRUE(is_hermitian(random_hermitian(8, rng), 1e-12));
  Rng a(99), b(99);
  EXPECT_EQ(random_pure_state(3, a).amplitudes(), random_pure_state(3, b).amplitudes());
}

TEST(Linalg, EigenAndSvdAgainstDirectComputation) {
  Mat m(2, 2);
  m << 2, cplx(0, 1), cplx(0, -1), 2;  // eigenvalues 1 and 3
  RVec ev = hermitian_eigenvalues(m);
  EXPECT_NEAR(ev(0), 1.0, 1e-12);
  EXPECT_NEAR(ev(1), 3.0, 1e-12);
  Mat r(2, 3);
  r << 3, 0, 0, 0, 4, 0;
  EXPECT_NEAR(op_norm(r), 4.0, 1e-12);
  Mat p = psd_sqrt(m, 1e-12);
  EXPECT_TRUE((p * p).isApprox(m, 1e-12));
  EXPECT_TRUE(kron(Mat::Identity(2, 2), m).block(2, 2, 2, 2).isApprox(m));
}

TEST(Mix, ConvexCombination) {
  DensityMatrix z = PureState::basis(1, 0).density(), o = PureState::basis(1, 1).density();
  DensityMatrix mm = mix({0.5, 0.5}, {z, o});
  EXPECT_NEAR(trace_distance(mm, DensityMatrix::maximally_mixed(1)), 0.0, 1e-12);
  EXPECT_THROW(mix({0.5}, {z, o}), Error);
}

}  // namespace
}  // namespace sqlab
