// Copyright 2024 The sqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sqlab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace sqlab {

HermitianEig hermitian_eig(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NonConvergence, "hermitian eigensolver failed");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

RVec hermitian_eigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NonConvergence, "hermitian eigensolver failed");
  }
  return es.eigenvalues();
}

RealSymmetricEig symmetric_eig(const RMat& m) {
  Eigen::SelfAdjointEigenSolver<RMat> es(m);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NonConvergence, "symmetric eigensolver failed");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

RVec real_eigenvalues(const RMat& m) {
  Eigen::EigenSolver<RMat> es(m, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NonConvergence, "eigensolver failed");
  }
  RVec v = es.eigenvalues().real();
  std::sort(v.data(), v.data() + v.size());
  return v;
}

Svd svd(const Mat& m) {
  Eigen::JacobiSVD<Mat> s(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {s.singularValues(), s.matrixU(), s.matrixV()};
}

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> s(m);
  return s.singularValues()(0);
}

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Mat d = m.adjoint() * m - Mat::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

Mat psd_sqrt(const Mat& m, double clip_tol) {
  HermitianEig e = hermitian_eig(m);
  RVec r(e.values.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    double v = e.values(i);
    if (v < -clip_tol) {
      throw Error(ErrorKind::InvalidState,
                  "matrix is not positive semidefinite (eigenvalue " + std::to_string(v) + ")", v);
    }
    r(i) = v < 0 ? 0.0 : std::sqrt(v);
  }
  return e.vectors * r.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace sqlab
