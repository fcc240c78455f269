// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "sqlab/uqma.hpp"

namespace sqlab {
namespace {

double s_prime_of(double c0, double c1) { return (1.0 + c1) * (2.0 + c0 - c1) / 4.0; }

}  // namespace

PureState HadamardTestVerifier::embed(const Vec& psi) const {
  if (psi.size() != evolution.rows()) throw Error(ErrorKind::DimensionMismatch, "vector does not match the Kitaev space");
  Vec full = Vec::Zero(Eigen::Index{1} << assembled.witness_qubits);
  full.head(psi.size()) = psi;
  return PureState::normalized(std::move(full));
}

double HadamardTestVerifier::acceptance_formula(const Vec& psi) const {
  return 0.5 + 0.5 * psi.dot(evolution * psi).real();
}

DensityMatrix HadamardTestVerifier::resulting_state_formula(const Vec& psi) const {
  const Eigen::Index N = Eigen::Index{1} << hamiltonian.work_qubits;
  Vec phi = psi + evolution * psi;
  const double p = phi.squaredNorm() / 4.0;
  if (p < kZeroBranchTol) throw Error(ErrorKind::ZeroBranch, "witness is never accepted", p);
  Mat rho = Mat::Zero(N, N);
  for (int t = 0; t <= hamiltonian.T; ++t) {
    Vec b = phi.segment(t * N, N);
    rho += b * b.adjoint();
  }
  Mat v = unitary_of(base.circuit);
  return DensityMatrix::trusted(v.adjoint() * rho * v / (4.0 * p));
}

HadamardTestVerifier build_hadamard_test_verifier(const WeightedKitaevHamiltonian& h, const VerifierSpec& base,
                                                  const PureState& witness, std::optional<double> t) {
  base.validate();
  const int n = base.num_qubits();
  if (h.work_qubits != n || h.T != static_cast<int>(base.circuit.size())) {
    throw Error(ErrorKind::DimensionMismatch, "Hamiltonian was not built from this verifier");
  }
  if (witness.num_qubits() != base.witness_qubits) throw Error(ErrorKind::DimensionMismatch, "witness width");

  HadamardTestVerifier v;
  v.hamiltonian = h;
  v.base = base;
  v.t = t ? *t : choose_time(h.h);
  v.spectrum = hermitian_eig(h.h);
  const double lmax = v.spectrum.values(v.spectrum.values.size() - 1);
  if (!(v.t > 0.0) || lmax * v.t > M_PI + 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "need 0 < t and lambda_max t <= pi", lmax * v.t);
  }
  v.evolution = exact_evolution(h.h, v.t);
  v.unique_witness = base.ancilla_qubits ? witness.tensor(PureState::zeros(base.ancilla_qubits)) : witness;

  int c = 1;
  while ((1 << c) < h.T + 1) ++c;
  v.clock_qubits = c;
  const int wq = c + n;
  const int out = wq;
  if (wq + 1 > kMaxUnitaryQubits) throw Error(ErrorKind::SizeLimit, "Hadamard-test verifier too wide");

  const Eigen::Index wdim = Eigen::Index{1} << wq;
  const Eigen::Index D = v.evolution.rows();
  Mat ext = -Mat::Identity(wdim, wdim);  // exp(-i pi) on unused clock values
  ext.topLeftCorner(D, D) = v.evolution;

  std::vector<int> targets(static_cast<std::size_t>(wq));
  for (int q = 0; q < wq; ++q) targets[static_cast<std::size_t>(q)] = q;
  std::vector<int> work(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) work[static_cast<std::size_t>(q)] = c + q;

  Circuit circ(wq + 1, out);
  circ.add(gates::h(out));
  circ.add(gates::controlled(ext, {out}, targets));
  circ.add(gates::h(out));
  circ.append(base.circuit.inverse(), work);
  circ.add(gates::x(out));  // accept on outcome 0
  circ.set_register("C", 0, c);
  circ.set_register("W", c, n);
  circ.set_register("O", out, 1);

  VerifierSpec& a = v.assembled;
  a.circuit = std::move(circ);
  a.witness_qubits = wq;
  a.ancilla_qubits = 1;
  a.target = v.unique_witness;
  for (int q = 0; q < c; ++q) a.traced_qubits.push_back(q);

  const double c0 = std::cos(v.lambda0() * v.t);
  const double c1 = std::cos(v.lambda1() * v.t);
  a.completeness = (1.0 + c0) / 2.0;
  const double s = s_prime_of(c0, c1);
  v.promise_valid = s < a.completeness;
  a.soundness = v.promise_valid ? s : 0.0;
  const double delta_prime = std::max({(1.0 - c0) / 2.0, h.delta1, (c0 - c1) / 2.0});
  a.distance = std::min(1.0, 2.0 * delta_prime);
  a.validate();
  return v;
}

GapFormula completeness_soundness_gap(const HadamardTestVerifier& v) {
  if (v.lambda1() - v.lambda0() <= kDegeneracyTol) {
    throw Error(ErrorKind::Degenerate, "lambda1 equals the ground energy", v.lambda1() - v.lambda0());
  }
  const double c0 = std::cos(v.lambda0() * v.t);
  const double c1 = std::cos(v.lambda1() * v.t);
  GapFormula g;
  g.c_prime = (1.0 + c0) / 2.0;
  g.s_prime = s_prime_of(c0, c1);
  g.gap = g.c_prime - g.s_prime;
  g.product = (1.0 - c1) * (c0 - c1);
  g.literal_match = std::abs(g.gap - g.product) <= 1e-8;
  g.quarter_match = std::abs(g.gap - g.product / 4.0) <= 1e-8;
  g.gap_positive = g.gap > 0.0;
  return g;
}

CertificateReport soundness_certificate(const HadamardTestVerifier& v, double alpha0) {
  if (!(std::abs(alpha0) <= 1.0)) throw Error(ErrorKind::InvalidArgument, "|alpha0| must be at most 1", alpha0);
  CertificateReport r;
  r.alpha0 = alpha0;
  r.alpha1 = std::sqrt(std::max(0.0, 1.0 - alpha0 * alpha0));
  r.lambda0 = v.lambda0();
  r.lambda1 = v.lambda1();
  r.t = v.t;
  Vec psi = r.alpha0 * v.eigenvector(0) + r.alpha1 * v.eigenvector(1);

  Vec alpha = v.spectrum.vectors.adjoint() * psi;
  r.alpha_norm = alpha.squaredNorm();
  for (Eigen::Index j = 0; j < alpha.size(); ++j) {
    r.acceptance_formula += std::norm(alpha(j)) * (1.0 + std::cos(v.spectrum.values(j) * v.t)) / 2.0;
  }

  PureState w = v.embed(psi);
  r.acceptance = acceptance_probability(v.assembled, w);
  if (r.acceptance < kZeroBranchTol) throw Error(ErrorKind::ZeroBranch, "witness is never accepted", r.acceptance);
  DensityMatrix rho = resulting_state(v.assembled, w);
  r.f2 = v.unique_witness.amplitudes().dot(rho.matrix() * v.unique_witness.amplitudes()).real();
  r.td = trace_distance(v.unique_witness, rho);
  r.formula_td = trace_distance(rho, v.resulting_state_formula(psi));

  const double p = r.acceptance;
  const double c0 = std::cos(r.lambda0 * r.t);
  const double c1 = std::cos(r.lambda1 * r.t);
  r.delta0 = (1.0 - c0) / 2.0;
  r.delta1 = v.hamiltonian.delta1;
  r.q_ratio = alpha0 * alpha0 / p;
  r.f2_lower = r.q_ratio * (1.0 - r.delta0) * (1.0 - r.delta0) * (1.0 - r.delta1);
  r.f2_bound_holds = alpha0 == 0.0 || r.f2 >= r.f2_lower - 1e-8;
  r.td_bound = 1.0 - (1.0 - r.delta0) * std::sqrt(1.0 - r.delta1) * std::abs(alpha0) / p;
  r.td_bound_holds = r.td <= r.td_bound + 1e-8;
  r.td_fvdg_bound = std::sqrt(1.0 - std::min(1.0, r.f2_lower));
  r.td_fvdg_holds = r.td <= r.td_fvdg_bound + 1e-8;
  r.s_prime = s_prime_of(c0, c1);
  r.premise = p >= r.s_prime;
  r.delta_prime = std::max({r.delta0, r.delta1, (c0 - c1) / 2.0});
  r.td_2delta_holds = r.td <= 2.0 * r.delta_prime + 1e-6;
  return r;
}

}  // namespace sqlab
