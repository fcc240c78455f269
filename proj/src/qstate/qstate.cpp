// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqlab/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqlab/linalg.hpp"

namespace sqlab {
namespace {

int log2_exact(std::size_t dim, const char* what) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " dimension " + std::to_string(dim) + " is not a power of two");
  }
  return n;
}

void check_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                "dimensions differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

// Maps a sub-index over `qubits` (first listed qubit is the most
// significant bit) to its bit pattern inside an n-qubit index.
std::vector<std::size_t> embed_table(int n, const std::vector<int>& qubits) {
  std::size_t sub_dim = std::size_t{1} << qubits.size();
  std::vector<std::size_t> table(sub_dim, 0);
  int k = static_cast<int>(qubits.size());
  for (std::size_t s = 0; s < sub_dim; ++s) {
    std::size_t full = 0;
    for (int j = 0; j < k; ++j) {
      if ((s >> (k - 1 - j)) & 1u) full |= qubit_mask(qubits[j], n);
    }
    table[s] = full;
  }
  return table;
}

std::vector<int> complement(int n, const std::vector<int>& traced) {
  std::vector<bool> gone(n, false);
  for (int q : traced) {
    if (q < 0 || q >= n) {
      throw Error(ErrorKind::IndexOutOfRange, "qubit " + std::to_string(q) + " out of range");
    }
    if (gone[q]) {
      throw Error(ErrorKind::InvalidArgument, "qubit " + std::to_string(q) + " listed twice");
    }
    gone[q] = true;
  }
  std::vector<int> keep;
  for (int q = 0; q < n; ++q) {
    if (!gone[q]) keep.push_back(q);
  }
  return keep;
}

double sum_abs_eigs(const Mat& m) {
  RVec ev = hermitian_eigenvalues(m);
  return ev.cwiseAbs().sum();
}

}  // namespace

PureState::PureState(Vec amplitudes) : amps_(std::move(amplitudes)) {
  num_qubits_ = log2_exact(static_cast<std::size_t>(amps_.size()), "state");
  if (num_qubits_ < 1) throw Error(ErrorKind::InvalidState, "a state needs at least one qubit");
  double norm = amps_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw Error(ErrorKind::InvalidState, "amplitude vector has norm " + std::to_string(norm),
                norm - 1.0);
  }
}

PureState PureState::basis(int num_qubits, std::size_t index) {
  std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
  Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v));
}

PureState PureState::normalized(Vec v) {
  double n = v.norm();
  if (n < kZeroBranchTol) throw Error(ErrorKind::ZeroBranch, "cannot normalize a zero vector");
  v /= n;
  return PureState(std::move(v));
}

PureState PureState::tensor(const PureState& other) const {
  Vec out(amps_.size() * other.amps_.size());
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    out.segment(i * other.amps_.size(), other.amps_.size()) = amps_(i) * other.amps_;
  }
  return PureState::normalized(std::move(out));
}

DensityMatrix PureState::density() const {
  return DensityMatrix::trusted(amps_ * amps_.adjoint());
}

DensityMatrix::DensityMatrix(Mat matrix, TrustedTag) : m_(std::move(matrix)) {
  if (m_.rows() != m_.cols()) throw Error(ErrorKind::DimensionMismatch, "density matrix not square");
  num_qubits_ = log2_exact(static_cast<std::size_t>(m_.rows()), "density matrix");
}

DensityMatrix::DensityMatrix(Mat matrix) : DensityMatrix(std::move(matrix), TrustedTag{}) {
  if (!is_hermitian(m_, kNormTol)) throw Error(ErrorKind::InvalidState, "matrix is not Hermitian");
  double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kNormTol) {
    throw Error(ErrorKind::InvalidState, "trace is " + std::to_string(tr), tr - 1.0);
  }
  RVec ev = hermitian_eigenvalues(m_);
  if (ev.size() > 0 && ev(0) < -kStateTol) {
    throw Error(ErrorKind::InvalidState, "negative eigenvalue " + std::to_string(ev(0)), ev(0));
  }
}

DensityMatrix DensityMatrix::trusted(Mat matrix) { return DensityMatrix(std::move(matrix), TrustedTag{}); }

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  std::size_t dim = std::size_t{1} << num_qubits;
  return trusted(Mat::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::tensor(const DensityMatrix& other) const {
  return trusted(kron(m_, other.m_));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  check_same_dim(a.dim(), b.dim());
  double td = 0.5 * sum_abs_eigs(a.matrix() - b.matrix());
  return std::clamp(td, 0.0, 1.0);
}

double trace_distance(const PureState& a, const DensityMatrix& b) {
  return trace_distance(a.density(), b);
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  check_same_dim(a.dim(), b.dim());
  Mat sa = psd_sqrt(a.matrix(), kStateTol);
  Mat inner = sa * b.matrix() * sa;
  inner = 0.5 * (inner + inner.adjoint());
  RVec ev = hermitian_eigenvalues(inner);
  double f = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double v = ev(i);
    if (v < -kStateTol) {
      throw Error(ErrorKind::InvalidState, "fidelity operator has eigenvalue " + std::to_string(v), v);
    }
    if (v > 0) f += std::sqrt(v);
  }
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const PureState& a, const DensityMatrix& b) {
  check_same_dim(a.dim(), b.dim());
  double overlap = (a.amplitudes().adjoint() * b.matrix() * a.amplitudes())(0, 0).real();
  if (overlap < -kStateTol) throw Error(ErrorKind::InvalidState, "negative overlap", overlap);
  return std::clamp(std::sqrt(std::max(overlap, 0.0)), 0.0, 1.0);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& traced_qubits) {
  int n = rho.num_qubits();
  std::vector<int> keep = complement(n, traced_qubits);
  if (traced_qubits.empty()) return rho;
  auto kt = embed_table(n, keep);
  auto tt = embed_table(n, traced_qubits);
  const Mat& m = rho.matrix();
  Eigen::Index dk = static_cast<Eigen::Index>(kt.size());
  Mat out = Mat::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      cplx acc = 0.0;
      for (std::size_t t : tt) {
        acc += m(static_cast<Eigen::Index>(kt[i] | t), static_cast<Eigen::Index>(kt[j] | t));
      }
      out(i, j) = acc;
    }
  }
  return DensityMatrix::trusted(std::move(out));
}

DensityMatrix partial_trace(const PureState& psi, const std::vector<int>& traced_qubits) {
  int n = psi.num_qubits();
  std::vector<int> keep = complement(n, traced_qubits);
  auto kt = embed_table(n, keep);
  auto tt = embed_table(n, traced_qubits);
  Mat a(static_cast<Eigen::Index>(kt.size()), static_cast<Eigen::Index>(tt.size()));
  for (std::size_t i = 0; i < kt.size(); ++i) {
    for (std::size_t j = 0; j < tt.size(); ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = psi[kt[i] | tt[j]];
    }
  }
  return DensityMatrix::trusted(a * a.adjoint());
}

PostSelection post_select(const PureState& psi, int qubit, int outcome) {
  int n = psi.num_qubits();
  if (qubit < 0 || qubit >= n) throw Error(ErrorKind::IndexOutOfRange, "post-selection qubit out of range");
  if (outcome != 0 && outcome != 1) throw Error(ErrorKind::InvalidArgument, "outcome must be 0 or 1");
  std::vector<int> keep = complement(n, {qubit});
  auto kt = embed_table(n, keep);
  std::size_t fixed = outcome ? qubit_mask(qubit, n) : 0;
  Vec branch(static_cast<Eigen::Index>(kt.size()));
  for (std::size_t i = 0; i < kt.size(); ++i) branch(static_cast<Eigen::Index>(i)) = psi[kt[i] | fixed];
  double p = branch.squaredNorm();
  if (p < kZeroBranchTol) {
    throw Error(ErrorKind::ZeroBranch, "post-selected branch has probability " + std::to_string(p), p);
  }
  if (kt.size() == 1) return {p, DensityMatrix::trusted(Mat::Identity(1, 1))};
  branch /= std::sqrt(p);
  return {p, DensityMatrix::trusted(branch * branch.adjoint())};
}

bool fuchs_vdg_check(const DensityMatrix& a, const DensityMatrix& b, double slack) {
  double td = trace_distance(a, b);
  double f = fidelity(a, b);
  return 1.0 - f <= td + slack && td <= std::sqrt(std::max(0.0, 1.0 - f * f)) + slack;
}

DensityMatrix mix(const std::vector<double>& weights, const std::vector<DensityMatrix>& states) {
  if (weights.size() != states.size() || states.empty()) {
    throw Error(ErrorKind::InvalidArgument, "mixture needs one weight per state");
  }
  double total = 0.0;
  Mat acc = Mat::Zero(states[0].matrix().rows(), states[0].matrix().cols());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (weights[i] < 0) throw Error(ErrorKind::InvalidArgument, "negative mixture weight");
    check_same_dim(states[i].dim(), states[0].dim());
    acc += weights[i] * states[i].matrix();
    total += weights[i];
  }
  if (std::abs(total - 1.0) > kNormTol) throw Error(ErrorKind::InvalidArgument, "mixture weights do not sum to 1");
  return DensityMatrix::trusted(std::move(acc));
}

DensityMatrix apply_unitary(const Mat& u, const DensityMatrix& rho) {
  check_same_dim(static_cast<std::size_t>(u.rows()), rho.dim());
  return DensityMatrix::trusted(u * rho.matrix() * u.adjoint());
}

}  // namespace sqlab
