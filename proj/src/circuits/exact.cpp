// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

// Exact simulation over Gaussian integers with a power-of-5 denominator.
// The gate set {CNOT, X, PYTH_R, PYTH_I} keeps every amplitude in
// Z[i] / 5^e, so probabilities are exact rationals.

#include <utility>

#include "sqlab/circuits.hpp"

namespace sqlab {
namespace {

bool div5(const mpz_class& z) { return mpz_divisible_ui_p(z.get_mpz_t(), 5) != 0; }

mpz_class pow5(int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 5, static_cast<unsigned long>(e));
  return r;
}

}  // namespace

void ExactAmplitude::canonicalize() {
  if (re == 0 && im == 0) {
    exponent = 0;
    return;
  }
  while (exponent > 0 && div5(re) && div5(im)) {
    re /= 5;
    im /= 5;
    --exponent;
  }
}

cplx ExactAmplitude::to_complex() const {
  mpz_class d = pow5(exponent);
  return {mpq_class(re, d).get_d(), mpq_class(im, d).get_d()};
}

mpq_class ExactAmplitude::norm_squared() const {
  mpq_class q(re * re + im * im, pow5(2 * exponent));
  q.canonicalize();
  return q;
}

bool ExactAmplitude::operator==(const ExactAmplitude& o) const {
  ExactAmplitude a = *this, b = o;
  a.canonicalize();
  b.canonicalize();
  return a.re == b.re && a.im == b.im && a.exponent == b.exponent;
}

ExactState::ExactState(int num_qubits, std::size_t basis_index) : num_qubits_(num_qubits) {
  std::size_t dim = std::size_t{1} << num_qubits;
  if (basis_index >= dim) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
  re_.assign(dim, 0);
  im_.assign(dim, 0);
  re_[basis_index] = 1;
}

ExactAmplitude ExactState::amplitude(std::size_t i) const {
  ExactAmplitude a{re_.at(i), im_.at(i), exponent_};
  a.canonicalize();
  return a;
}

Vec ExactState::to_vector() const {
  Vec v(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i) v(static_cast<Eigen::Index>(i)) = amplitude(i).to_complex();
  return v;
}

mpq_class ExactState::probability(int qubit, int outcome) const {
  if (qubit < 0 || qubit >= num_qubits_) throw Error(ErrorKind::IndexOutOfRange, "qubit out of range");
  mpz_class num = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (bit_of(i, qubit, num_qubits_) == outcome) num += re_[i] * re_[i] + im_[i] * im_[i];
  }
  mpq_class q(num, pow5(2 * exponent_));
  q.canonicalize();
  return q;
}

mpq_class ExactState::total_probability() const {
  mpz_class num = 0;
  for (std::size_t i = 0; i < dim(); ++i) num += re_[i] * re_[i] + im_[i] * im_[i];
  mpq_class q(num, pow5(2 * exponent_));
  q.canonicalize();
  return q;
}

void ExactState::reduce() {
  while (exponent_ > 0) {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!div5(re_[i]) || !div5(im_[i])) return;
    }
    for (std::size_t i = 0; i < dim(); ++i) {
      re_[i] /= 5;
      im_[i] /= 5;
    }
    --exponent_;
  }
}

void ExactState::apply(const Gate& g) {
  if (!g.exact_compatible()) {
    throw Error(ErrorKind::Unsupported, std::string("gate ") + to_string(g.kind) + " is not exact-compatible");
  }
  const int n = num_qubits_;
  const std::size_t tm = qubit_mask(g.targets.at(0), n);
  std::size_t cmask = 0;
  for (int c : g.controls) cmask |= qubit_mask(c, n);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i & tm) continue;
    const std::size_t j = i | tm;
    switch (g.kind) {
      case GateKind::X:
        std::swap(re_[i], re_[j]);
        std::swap(im_[i], im_[j]);
        break;
      case GateKind::CNOT:
        if ((i & cmask) == cmask) {
          std::swap(re_[i], re_[j]);
          std::swap(im_[i], im_[j]);
        }
        break;
      case GateKind::PythR: {
        // (1/5) [[4, -3], [3, 4]]
        mpz_class ar = re_[i], ai = im_[i], br = re_[j], bi = im_[j];
        re_[i] = 4 * ar - 3 * br;
        im_[i] = 4 * ai - 3 * bi;
        re_[j] = 3 * ar + 4 * br;
        im_[j] = 3 * ai + 4 * bi;
        break;
      }
      case GateKind::PythI: {
        // (1/5) [[4, 3i], [3i, 4]]
        mpz_class ar = re_[i], ai = im_[i], br = re_[j], bi = im_[j];
        re_[i] = 4 * ar - 3 * bi;
        im_[i] = 4 * ai + 3 * br;
        re_[j] = 4 * br - 3 * ai;
        im_[j] = 4 * bi + 3 * ar;
        break;
      }
      default:
        break;
    }
  }
  if (g.kind == GateKind::PythR || g.kind == GateKind::PythI) {
    ++exponent_;
    reduce();
  }
}

ExactState simulate_exact(const Circuit& c, std::size_t basis_input) {
  ExactState s(c.num_qubits(), basis_input);
  for (const Gate& g : c.gates()) s.apply(g);
  return s;
}

ExactAcceptance exact_acceptance(const Circuit& c) {
  ExactState s = simulate_exact(c, 0);
  mpq_class p = s.probability(c.output_qubit(), 1);
  mpz_class den = p.get_den();
  int e = 0;
  while (den > 1 && div5(den)) {
    den /= 5;
    ++e;
  }
  if (den != 1) throw Error(ErrorKind::InvalidState, "denominator is not a power of 5");
  return {p, c.pythagorean_count(), e};
}

std::string rational_to_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

mpq_class rational_from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::Parse, "not a rational: '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace sqlab
