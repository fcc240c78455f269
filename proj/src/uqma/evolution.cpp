// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "sqlab/uqma.hpp"

namespace sqlab {

Mat exact_evolution(const Mat& h, double t) {
  if (h.rows() != h.cols()) throw Error(ErrorKind::DimensionMismatch, "Hamiltonian must be square");
  if (static_cast<std::size_t>(h.rows()) > kMaxEvolutionDim) {
    throw Error(ErrorKind::SizeLimit, "evolution is limited to dimension " + std::to_string(kMaxEvolutionDim));
  }
  if (!is_hermitian(h, 1e-10)) throw Error(ErrorKind::InvalidArgument, "Hamiltonian is not Hermitian");
  HermitianEig e = hermitian_eig(h);
  Vec phases(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) phases(i) = std::polar(1.0, -e.values(i) * t);
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

double choose_time(const Mat& h) {
  const double peak = h.cwiseAbs().maxCoeff();
  if (h.size() == 0 || peak == 0.0) throw Error(ErrorKind::InvalidArgument, "zero Hamiltonian");
  return M_PI / (static_cast<double>(h.rows()) * peak);
}

}  // namespace sqlab
