// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/QR>

#include "sqlab/qstate.hpp"

namespace sqlab {

Vec random_gaussian_vector(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double re = g(rng);
    double im = g(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

PureState random_pure_state(int num_qubits, Rng& rng) {
  return PureState::normalized(random_gaussian_vector(std::size_t{1} << num_qubits, rng));
}

DensityMatrix random_density_matrix(int num_qubits, Rng& rng, int rank) {
  std::size_t dim = std::size_t{1} << num_qubits;
  std::size_t r = rank <= 0 ? dim : static_cast<std::size_t>(rank);
  Mat g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(r));
  for (std::size_t j = 0; j < r; ++j) g.col(static_cast<Eigen::Index>(j)) = random_gaussian_vector(dim, rng);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix::trusted(std::move(rho));
}

// Haar-distributed via QR of a Ginibre matrix with the phase correction on
// the diagonal of R.
Mat random_unitary(std::size_t dim, Rng& rng) {
  Mat g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < dim; ++j) g.col(static_cast<Eigen::Index>(j)) = random_gaussian_vector(dim, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    cplx d = r(i, i);
    double a = std::abs(d);
    q.col(i) *= (a > 0 ? d / a : cplx(1.0));
  }
  return q;
}

Mat random_hermitian(std::size_t dim, Rng& rng) {
  Mat g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < dim; ++j) g.col(static_cast<Eigen::Index>(j)) = random_gaussian_vector(dim, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace sqlab
