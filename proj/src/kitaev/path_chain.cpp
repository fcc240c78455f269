// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "sqlab/kitaev.hpp"
#include "sqlab/linalg.hpp"

namespace sqlab {

PathChain build_path_chain(const RVec& pi) {
  if (pi.size() < 1) throw Error(ErrorKind::InvalidArgument, "empty distribution");
  for (Eigen::Index t = 0; t < pi.size(); ++t) {
    if (!(pi(t) > 0.0)) throw Error(ErrorKind::InvalidArgument, "distribution must be strictly positive", pi(t));
  }
  if (std::abs(pi.sum() - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "distribution must sum to 1");
  PathChain c;
  c.T = static_cast<int>(pi.size()) - 1;
  c.pi = pi;
  c.P = RMat::Zero(pi.size(), pi.size());
  for (int t = 0; t <= c.T; ++t) {
    double stay = 1.0;
    if (t + 1 <= c.T) {
      c.P(t, t + 1) = 0.25 * std::min(1.0, pi(t + 1) / pi(t));
      stay -= c.P(t, t + 1);
    }
    if (t - 1 >= 0) {
      c.P(t, t - 1) = 0.25 * std::min(1.0, pi(t - 1) / pi(t));
      stay -= c.P(t, t - 1);
    }
    c.P(t, t) = stay;
  }
  c.validate();
  return c;
}

void PathChain::validate(double tol) const {
  const Eigen::Index n = pi.size();
  if (P.rows() != n || P.cols() != n) throw Error(ErrorKind::DimensionMismatch, "chain matrix size");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(P.row(i).sum() - 1.0) > tol) throw Error(ErrorKind::InvalidState, "row not stochastic");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (P(i, j) < 0.0) throw Error(ErrorKind::InvalidState, "negative transition probability");
      if (std::abs(i - j) > 1 && P(i, j) != 0.0) throw Error(ErrorKind::InvalidState, "chain is not tridiagonal");
      if (std::abs(pi(i) * P(i, j) - pi(j) * P(j, i)) > tol) throw Error(ErrorKind::InvalidState, "not reversible");
    }
  }
  RVec stat = P.transpose() * pi;
  if ((stat - pi).cwiseAbs().maxCoeff() > tol) throw Error(ErrorKind::InvalidState, "pi is not stationary");
}

double PathChain::spectral_gap() const {
  if (T == 0) return 0.0;
  RVec ev = real_eigenvalues(P);  // ascending
  return 1.0 - ev(ev.size() - 2);
}

RVec weighted_distribution(int T, double delta1) {
  if (T < 0) throw Error(ErrorKind::InvalidArgument, "T must be non-negative");
  if (T == 0) return RVec::Ones(1);
  if (!(delta1 > 0.0 && delta1 < 1.0)) throw Error(ErrorKind::InvalidArgument, "delta1 must lie in (0, 1)");
  RVec pi = RVec::Constant(T + 1, delta1 / T);
  pi(T) = 1.0 - delta1;
  return pi;
}

RMat path_hamiltonian(const PathChain& chain) {
  const Eigen::Index n = chain.pi.size();
  RVec s = chain.pi.cwiseSqrt();
  RMat a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = s(i) * chain.P(i, j) / s(j);
  }
  RMat h = RMat::Identity(n, n) - a;
  return 0.5 * (h + h.transpose());
}

double conductance(const PathChain& chain, int cut) {
  if (cut < 0 || cut >= chain.T) throw Error(ErrorKind::IndexOutOfRange, "cut must lie in [0, T)");
  const double in = chain.pi.head(cut + 1).sum();
  const double out = 1.0 - in;
  return chain.pi(cut) * chain.P(cut, cut + 1) / std::min(in, out);
}

CutConductance min_conductance(const PathChain& chain) {
  if (chain.T < 1) throw Error(ErrorKind::InvalidArgument, "a single node has no cut");
  CutConductance best{0, conductance(chain, 0)};
  for (int cut = 1; cut < chain.T; ++cut) {
    double phi = conductance(chain, cut);
    if (phi < best.phi) best = {cut, phi};
  }
  return best;
}

mpq_class exact_conductance(const std::vector<mpq_class>& pi, int cut) {
  const int T = static_cast<int>(pi.size()) - 1;
  if (cut < 0 || cut >= T) throw Error(ErrorKind::IndexOutOfRange, "cut must lie in [0, T)");
  mpq_class in = 0, total = 0;
  for (int t = 0; t <= T; ++t) {
    if (pi[t] <= 0) throw Error(ErrorKind::InvalidArgument, "distribution must be strictly positive");
    total += pi[t];
    if (t <= cut) in += pi[t];
  }
  if (total != 1) throw Error(ErrorKind::InvalidArgument, "distribution must sum to 1");
  // pi_cut * P_{cut,cut+1} = min{pi_cut, pi_{cut+1}} / 4
  mpq_class flow = (pi[cut] < pi[cut + 1] ? pi[cut] : pi[cut + 1]) / 4;
  mpq_class out = total - in;
  mpq_class r = flow / (in < out ? in : out);
  r.canonicalize();
  return r;
}

std::pair<int, mpq_class> exact_min_conductance(const std::vector<mpq_class>& pi) {
  const int T = static_cast<int>(pi.size()) - 1;
  if (T < 1) throw Error(ErrorKind::InvalidArgument, "a single node has no cut");
  std::pair<int, mpq_class> best{0, exact_conductance(pi, 0)};
  for (int cut = 1; cut < T; ++cut) {
    mpq_class phi = exact_conductance(pi, cut);
    if (phi < best.second) best = {cut, phi};
  }
  return best;
}

std::vector<mpq_class> exact_weighted_distribution(int T, const mpq_class& delta1) {
  if (T < 1) throw Error(ErrorKind::InvalidArgument, "T must be positive");
  std::vector<mpq_class> pi(static_cast<std::size_t>(T) + 1, delta1 / T);
  pi[static_cast<std::size_t>(T)] = 1 - delta1;
  for (auto& q : pi) q.canonicalize();
  return pi;
}

}  // namespace sqlab
