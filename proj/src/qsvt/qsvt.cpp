// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "sqlab/linalg.hpp"
#include "sqlab/qsvt.hpp"

namespace sqlab {
namespace {

std::vector<Eigen::Index> support(const RVec& mask) {
  std::vector<Eigen::Index> s;
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    if (mask(i) > 0.5) s.push_back(i);
  }
  return s;
}

}  // namespace

const char* to_string(InputProjector p) { return p == InputProjector::WitnessFree ? "witness-free" : "all-zero"; }
const char* to_string(PolyBackend b) { return b == PolyBackend::Erf ? "erf" : "chebyshev"; }

void ProjectedUnitaryEncoding::validate() const {
  const Eigen::Index n = unitary.rows();
  if (unitary.cols() != n || pi_in.size() != n || pi_out.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "projector masks must match the unitary");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if ((pi_in(i) != 0.0 && pi_in(i) != 1.0) || (pi_out(i) != 0.0 && pi_out(i) != 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "projector masks must be 0/1");
    }
  }
  if (!is_unitary(unitary, 1e-10)) throw Error(ErrorKind::InvalidArgument, "encoding matrix is not unitary");
}

std::vector<Eigen::Index> ProjectedUnitaryEncoding::in_support() const { return support(pi_in); }
std::vector<Eigen::Index> ProjectedUnitaryEncoding::out_support() const { return support(pi_out); }

Mat ProjectedUnitaryEncoding::encoded() const {
  auto in = in_support();
  auto out = out_support();
  Mat a(static_cast<Eigen::Index>(out.size()), static_cast<Eigen::Index>(in.size()));
  for (std::size_t r = 0; r < out.size(); ++r) {
    for (std::size_t c = 0; c < in.size(); ++c) {
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = unitary(out[r], in[c]);
    }
  }
  return a;
}

RVec basis_projector(int num_qubits, const std::vector<int>& qubits, const std::vector<int>& values) {
  if (qubits.size() != values.size()) throw Error(ErrorKind::InvalidArgument, "one value per projector qubit");
  const std::size_t dim = std::size_t{1} << num_qubits;
  RVec mask = RVec::Ones(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      if (bit_of(i, qubits[j], num_qubits) != values[j]) {
        mask(static_cast<Eigen::Index>(i)) = 0.0;
        break;
      }
    }
  }
  return mask;
}

ProjectedUnitaryEncoding encoding_of(const VerifierSpec& v, InputProjector p) {
  const int n = v.num_qubits();
  if (n > kMaxEncodingQubits) {
    throw Error(ErrorKind::SizeLimit, "encodings are limited to " + std::to_string(kMaxEncodingQubits) + " qubits");
  }
  std::vector<int> zq;
  for (int q = (p == InputProjector::AllZero ? 0 : v.witness_qubits); q < n; ++q) zq.push_back(q);
  ProjectedUnitaryEncoding e;
  e.unitary = unitary_of(v.circuit);
  e.pi_in = basis_projector(n, zq, std::vector<int>(zq.size(), 0));
  e.pi_out = basis_projector(n, {v.circuit.output_qubit()}, {1});
  return e;
}

// The ancilla is the high bit: rows [0, N) have it in |0>, rows [N, 2N) in
// |1>. Each e^{i phi (2P - I)} is C_P NOT, e^{-i phi Z} on the ancilla,
// C_P NOT, so the |0> branch sees +phi and the |1> branch -phi.
Mat apply_qsvt(const ProjectedUnitaryEncoding& enc, const PhaseSequence& phases) {
  enc.validate();
  const Eigen::Index n = enc.unitary.rows();
  if (n > (Eigen::Index{1} << kMaxEncodingQubits)) throw Error(ErrorKind::SizeLimit, "encoding too large");
  const int d = static_cast<int>(phases.angles.size());
  if (d % 2 == 0) throw Error(ErrorKind::InvalidArgument, "QSVT needs an odd number of phases");
  const auto in = enc.in_support();
  const auto out = enc.out_support();
  const Eigen::Index r = static_cast<Eigen::Index>(in.size());
  const double h = 1.0 / std::sqrt(2.0);

  Mat s = Mat::Zero(2 * n, r);
  for (Eigen::Index c = 0; c < r; ++c) {
    s(in[static_cast<std::size_t>(c)], c) = h;
    s(n + in[static_cast<std::size_t>(c)], c) = h;
  }
  const Mat u = enc.unitary;
  const Mat ud = enc.unitary.adjoint();
  auto apply = [&](const Mat& m) {
    s.topRows(n) = m * s.topRows(n);
    s.bottomRows(n) = m * s.bottomRows(n);
  };
  auto cnot = [&](const RVec& mask) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (mask(i) > 0.5) s.row(i).swap(s.row(n + i));
    }
  };
  auto phase = [&](const RVec& mask, double phi) {
    cnot(mask);
    s.topRows(n) *= std::polar(1.0, -phi);
    s.bottomRows(n) *= std::polar(1.0, phi);
    cnot(mask);
  };

  apply(u);
  for (int j = d; j >= 1; --j) {
    phase(j % 2 == 1 ? enc.pi_out : enc.pi_in, phases.angles[static_cast<std::size_t>(j) - 1]);
    if (j > 1) apply(j % 2 == 1 ? ud : u);
  }

  Mat result(static_cast<Eigen::Index>(out.size()), r);
  for (std::size_t o = 0; o < out.size(); ++o) {
    result.row(static_cast<Eigen::Index>(o)) = h * (s.row(out[o]) + s.row(n + out[o]));
  }
  return result;
}

Mat functional_calculus(const ProjectedUnitaryEncoding& enc, const SignPolynomial& p) {
  Svd s = svd(enc.encoded());
  const Eigen::Index k = s.singular_values.size();
  RVec f(k);
  for (Eigen::Index i = 0; i < k; ++i) f(i) = p(s.singular_values(i));
  return s.left.leftCols(k) * f.cast<cplx>().asDiagonal() * s.right.leftCols(k).adjoint();
}

Discrimination discriminate(const ProjectedUnitaryEncoding& enc, double a, double b, double eps) {
  if (!(a >= 0.0 && a < b && b <= 1.0)) throw Error(ErrorKind::InvalidArgument, "need 0 <= a < b <= 1");
  Discrimination out;
  out.a = a;
  out.b = b;
  out.epsilon = eps;
  out.polynomial = threshold_polynomial(a, b, eps);
  out.phases = find_phases(out.polynomial);
  out.transformed = apply_qsvt(enc, out.phases);
  return out;
}

}  // namespace sqlab
