// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "sqlab/kitaev.hpp"
#include "sqlab/linalg.hpp"

namespace sqlab {
namespace {

Mat gate_unitary(const Gate& g, int n) {
  Mat u = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  apply_gate(g, u, n);
  return u;
}

}  // namespace

WeightedKitaevHamiltonian build_weighted_kitaev(const VerifierSpec& v, double delta1) {
  v.validate();
  const int n = v.num_qubits();
  const int T = static_cast<int>(v.circuit.size());
  const Eigen::Index N = Eigen::Index{1} << n;
  const std::size_t dim = static_cast<std::size_t>(T + 1) * static_cast<std::size_t>(N);
  if (dim > kMaxKitaevDim) {
    throw Error(ErrorKind::SizeLimit, "(T+1) 2^n = " + std::to_string(dim) + " exceeds " +
                                          std::to_string(kMaxKitaevDim));
  }
  if (T < 1) throw Error(ErrorKind::InvalidArgument, "the verifier needs at least one gate");

  WeightedKitaevHamiltonian k;
  k.T = T;
  k.work_qubits = n;
  k.delta1 = delta1;
  k.chain = build_path_chain(weighted_distribution(T, delta1));
  k.nu = std::max(0.0, 1.0 - encoding_svd(v).max_acceptance());

  const Eigen::Index D = static_cast<Eigen::Index>(dim);
  k.h_prop = Mat::Zero(D, D);
  k.h_in = Mat::Zero(D, D);
  k.h_out = Mat::Zero(D, D);
  const RVec& pi = k.chain.pi;
  const RMat& P = k.chain.P;
  for (int t = 0; t <= T; ++t) {
    k.h_prop.block(t * N, t * N, N, N).diagonal().setConstant(1.0 - P(t, t));
  }
  for (int t = 1; t <= T; ++t) {
    const double w = std::sqrt(pi(t) / pi(t - 1)) * P(t, t - 1);
    Mat u = gate_unitary(v.circuit.gates()[static_cast<std::size_t>(t) - 1], n);
    k.h_prop.block(t * N, (t - 1) * N, N, N) = -w * u;
    k.h_prop.block((t - 1) * N, t * N, N, N) = -w * u.adjoint();
  }
  for (Eigen::Index x = 0; x < N; ++x) {
    bool anc_zero = true;
    for (int q = v.witness_qubits; q < n; ++q) anc_zero = anc_zero && !bit_of(static_cast<std::size_t>(x), q, n);
    if (!anc_zero) k.h_in(x, x) = 1.0;
    if (!bit_of(static_cast<std::size_t>(x), v.circuit.output_qubit(), n)) k.h_out(T * N + x, T * N + x) = 1.0;
  }
  k.h = k.h_prop + k.h_in + k.h_out;
  return k;
}

Vec history_state(const Circuit& c, const PureState& input, const RVec& pi) {
  const int T = static_cast<int>(c.size());
  if (pi.size() != T + 1) throw Error(ErrorKind::DimensionMismatch, "pi must have T + 1 entries");
  if (input.num_qubits() != c.num_qubits()) throw Error(ErrorKind::DimensionMismatch, "input width");
  const Eigen::Index N = static_cast<Eigen::Index>(input.dim());
  Vec out(N * (T + 1));
  Vec cur = input.amplitudes();
  out.segment(0, N) = std::sqrt(pi(0)) * cur;
  for (int t = 1; t <= T; ++t) {
    apply_gate(c.gates()[static_cast<std::size_t>(t) - 1], cur, c.num_qubits());
    out.segment(t * N, N) = std::sqrt(pi(t)) * cur;
  }
  return out / out.norm();
}

Vec history_state(const VerifierSpec& v, const PureState& witness, const RVec& pi) {
  if (witness.num_qubits() != v.witness_qubits) throw Error(ErrorKind::DimensionMismatch, "witness width");
  PureState in = v.ancilla_qubits ? witness.tensor(PureState::zeros(v.ancilla_qubits)) : witness;
  return history_state(v.circuit, in, pi);
}

DensityMatrix clock_traced(const Vec& history, int T, int work_qubits) {
  const Eigen::Index N = Eigen::Index{1} << work_qubits;
  if (history.size() != N * (T + 1)) {
    throw Error(ErrorKind::DimensionMismatch, "history state does not match T and the work register");
  }
  Mat rho = Mat::Zero(N, N);
  for (int t = 0; t <= T; ++t) {
    Vec b = history.segment(t * N, N);
    rho += b * b.adjoint();
  }
  return DensityMatrix::trusted(std::move(rho));
}

GapReport verify_gap_bound(const WeightedKitaevHamiltonian& h) {
  RVec ev = hermitian_eigenvalues(h.h);
  if (ev.size() < 2) throw Error(ErrorKind::InvalidArgument, "spectrum too small");
  GapReport r;
  r.nu = h.nu;
  r.lambda0 = ev(0);
  r.lambda1 = ev(1);
  r.gap = r.lambda1 - r.lambda0;
  if (r.gap <= kDegeneracyTol) throw Error(ErrorKind::Degenerate, "ground space is degenerate", r.gap);
  r.path_gap = h.chain.spectral_gap();
  const double pmin = std::min(h.chain.pi(0), h.chain.pi(h.T));
  r.gap_bound = r.path_gap * (1.0 - std::sqrt(1.0 - h.nu)) / 4.0 * pmin;
  r.gap_bound_holds = r.gap >= r.gap_bound - 1e-12;
  r.frustration_free = h.nu < 1e-12;
  if (!r.frustration_free) {
    r.c0 = r.gap * std::pow(static_cast<double>(h.T), 3) / (h.nu * h.delta1);
    r.floor_ok = *r.c0 >= kGapConstantFloor;
  }
  return r;
}

void write_triplets(std::ostream& os, const Mat& m, double tol) {
  os.precision(17);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (std::abs(m(i, j)) > tol) os << i << ' ' << j << ' ' << m(i, j).real() << ' ' << m(i, j).imag() << '\n';
    }
  }
}

GapSweep sweep_gap_constant(std::uint64_t seed, int trials) {
  Rng rng(seed);
  GapSweep out;
  out.min_c0 = std::numeric_limits<double>::infinity();
  for (int T = 2; T <= 6; ++T) {
    for (double delta1 : {0.05, 0.1, 0.2}) {
      for (int trial = 0; trial < trials;) {
        VerifierSpec v;
        v.circuit = random_circuit(2, T, rng);
        v.circuit.set_output_qubit(1);
        v.witness_qubits = 1;
        v.ancilla_qubits = 1;
        WeightedKitaevHamiltonian h = build_weighted_kitaev(v, delta1);
        if (h.nu < 1e-3 || h.nu > 0.999) continue;
        RVec ev = hermitian_eigenvalues(h.h);
        if (ev(1) - ev(0) <= kDegeneracyTol) continue;
        SweepRow r{T, delta1, trial, h.nu, ev(1) - ev(0), 0.0};
        r.c0 = r.gap * std::pow(static_cast<double>(T), 3) / (h.nu * delta1);
        out.min_c0 = std::min(out.min_c0, r.c0);
        out.rows.push_back(r);
        ++trial;
      }
    }
  }
  return out;
}

Circuit pad_with_identities(const Circuit& c, int count) {
  Circuit out = c;
  const Mat id = Mat::Identity(2, 2);
  for (int i = 0; i < count; ++i) out.add(gates::custom(id, {0}));
  return out;
}

}  // namespace sqlab
