// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "sqlab/rewinding.hpp"

namespace sqlab {
namespace {

struct CQ {
  mpq_class re;
  mpq_class im;
};

CQ mul(const CQ& a, const CQ& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
CQ conj_mul(const CQ& a, const CQ& b) { return {a.re * b.re + a.im * b.im, a.re * b.im - a.im * b.re}; }
mpq_class norm2(const CQ& a) { return a.re * a.re + a.im * a.im; }

Mat pauli(char which) {
  Mat m(2, 2);
  if (which == 'x') m << 0, 1, 1, 0;
  else m << 1, 0, 0, -1;
  return m;
}

void require_exact(const VerifierSpec& v) {
  v.validate();
  if (!v.circuit.exact_compatible()) {
    throw Error(ErrorKind::Unsupported, "rewinding needs a circuit over {CNOT, PYTH_R, PYTH_I, X}");
  }
}

Gate with_control(Gate g, int q, int value) {
  g.kind = GateKind::Controlled;
  g.controls.push_back(q);
  g.control_values.push_back(value);
  return g;
}

// 2|0><0| - I on qubits [first, first + count).
std::vector<Gate> zero_reflection(int first, int count) {
  std::vector<Gate> out;
  for (int q = first; q < first + count; ++q) out.push_back(gates::x(q));
  std::vector<int> ctl;
  for (int q = first; q < first + count - 1; ++q) ctl.push_back(q);
  const int last = first + count - 1;
  out.push_back(ctl.empty() ? gates::z(last) : gates::controlled(pauli('z'), ctl, {last}));
  for (int q = first; q < first + count; ++q) out.push_back(gates::x(q));
  out.push_back(gates::custom(-Mat::Identity(2, 2), {first}));
  return out;
}

}  // namespace

mpz_class acceptance_denominator(int l) {
  if (l < 0) throw Error(ErrorKind::InvalidArgument, "gate count must be non-negative");
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 5, 2 * static_cast<unsigned long>(l));
  return d;
}

int counter_qubits(const mpz_class& k, int l) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  mpz_class top = 2 * k;
  mpz_class d = acceptance_denominator(l);
  if (d > top) top = d;
  mpz_class last = top - 1;
  return static_cast<int>(mpz_sizeinbase(last.get_mpz_t(), 2));
}

Circuit build_Q(const VerifierSpec& v, const mpz_class& k, RewindingLayout* layout) {
  require_exact(v);
  const int l = v.circuit.pythagorean_count();
  RewindingLayout lay{v.witness_qubits, v.num_qubits(), counter_qubits(k, l)};
  if (lay.width() > kMaxRewindSimQubits) {
    throw Error(ErrorKind::SizeLimit, "rewinding circuit needs " + std::to_string(lay.width()) + " qubits");
  }
  if (layout) *layout = lay;
  const mpz_class denom = acceptance_denominator(l);

  Circuit c(lay.q_width(), lay.o());
  for (int i = 0; i < lay.m; ++i) c.add(gates::cnot(i, lay.r(i)));

  const Eigen::Index sd = Eigen::Index{1} << lay.s;
  const Eigen::Index span = static_cast<Eigen::Index>(mpz_class(2 * k).get_ui());
  Vec u = Vec::Zero(sd);
  u.head(span).setConstant(1.0 / std::sqrt(static_cast<double>(span)));
  Vec w = -u;
  w(0) += 1.0;
  Mat house = Mat::Identity(sd, sd) - 2.0 * w * w.adjoint() / w.squaredNorm();
  std::vector<int> sq;
  for (int j = 0; j < lay.s; ++j) sq.push_back(lay.s_start() + j);
  c.add(gates::block(house, sq));

  std::vector<int> rmap;
  for (int q = 0; q < lay.n; ++q) rmap.push_back(lay.r(q));
  c.append(v.circuit, rmap);

  // S < 5^{2l} as a union of disjoint prefix cubes.
  const int rout = lay.r(v.circuit.output_qubit());
  for (int j = 0; j < lay.s; ++j) {
    if (!mpz_tstbit(denom.get_mpz_t(), static_cast<mp_bitcnt_t>(lay.s - 1 - j))) continue;
    std::vector<int> ctl{rout};
    std::vector<int> val{1};
    for (int i = 0; i < j; ++i) {
      ctl.push_back(sq[static_cast<std::size_t>(i)]);
      val.push_back(mpz_tstbit(denom.get_mpz_t(), static_cast<mp_bitcnt_t>(lay.s - 1 - i)));
    }
    ctl.push_back(sq[static_cast<std::size_t>(j)]);
    val.push_back(0);
    c.add(gates::controlled(pauli('x'), ctl, {lay.o()}, val));
  }
  c.set_register("W", 0, lay.m);
  c.set_register("O", lay.o(), 1);
  c.set_register("R", lay.r(0), lay.n);
  c.set_register("S", lay.s_start(), lay.s);
  return c;
}

Circuit rewound_circuit(const Circuit& q, const RewindingLayout& lay) {
  if (q.num_qubits() != lay.q_width()) throw Error(ErrorKind::DimensionMismatch, "Q does not match the layout");
  Circuit c(lay.width(), lay.f2());
  std::vector<int> id;
  for (int i = 0; i < lay.q_width(); ++i) id.push_back(i);
  c.append(q, id);
  c.add(gates::cnot(lay.o(), lay.f1()));
  const Circuit inv = q.inverse();
  for (const Gate& g : inv.gates()) c.add(with_control(g, lay.f1(), 0));
  for (const Gate& g : zero_reflection(lay.o(), lay.q_width() - lay.m)) c.add(with_control(g, lay.f1(), 0));
  for (const Gate& g : q.gates()) c.add(with_control(g, lay.f1(), 0));
  c.add(gates::x(lay.f2()));
  c.add(gates::controlled(pauli('x'), {lay.f1(), lay.o()}, {lay.f2()}, {0, 0}));
  for (const auto& [name, r] : q.registers()) c.set_register(name, r.start, r.size);
  c.set_register("F1", lay.f1(), 1);
  c.set_register("F2", lay.f2(), 1);
  return c;
}

RewindingVerifier perfect_completeness_transform(const VerifierSpec& v, const mpz_class& k) {
  require_exact(v);
  if (v.completeness < 0.5) throw Error(ErrorKind::InvalidArgument, "rewinding needs completeness >= 1/2", v.completeness);
  RewindingVerifier rv;
  rv.base = v;
  rv.k = k;
  rv.l = v.circuit.pythagorean_count();
  rv.denominator = acceptance_denominator(rv.l);
  rv.q = build_Q(v, k, &rv.layout);
  const RewindingLayout& lay = rv.layout;
  mpq_class claim(k, rv.denominator);
  claim.canonicalize();
  rv.rejects = claim < mpq_class(v.completeness);

  VerifierSpec& a = rv.assembled;
  a.circuit = rv.rejects ? Circuit(lay.width(), lay.f2()) : rewound_circuit(rv.q, lay);
  a.witness_qubits = lay.m;
  a.ancilla_qubits = lay.width() - lay.m;
  a.target = v.target;
  a.distance = v.distance;
  a.completeness = 1.0;
  a.soundness = g_eval(mpq_class(v.soundness / v.completeness)).get_d();
  std::vector<int>& tr = a.traced_qubits;
  for (int i = 0; i < lay.m; ++i) tr.push_back(i);
  tr.push_back(lay.o());
  tr.push_back(lay.r(v.circuit.output_qubit()));
  for (int q : v.traced_qubits) tr.push_back(lay.r(q));
  for (int j = 0; j < lay.s; ++j) tr.push_back(lay.s_start() + j);
  tr.push_back(lay.f1());
  std::sort(tr.begin(), tr.end());
  a.validate();
  return rv;
}

ExactRewinding exact_rewinding(const VerifierSpec& v, std::size_t witness, const mpz_class& k) {
  require_exact(v);
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (witness >= (std::size_t{1} << v.witness_qubits)) throw Error(ErrorKind::IndexOutOfRange, "witness index");
  const int n = v.num_qubits();
  const int out = v.circuit.output_qubit();
  const int l = v.circuit.pythagorean_count();
  const mpz_class denom = acceptance_denominator(l);

  ExactState st = simulate_exact(v.circuit, witness << v.ancilla_qubits);
  ExactRewinding r;
  r.base_acceptance = st.probability(out, 1);
  mpq_class kq = r.base_acceptance * denom;
  kq.canonicalize();
  if (kq.get_den() != 1) throw Error(ErrorKind::InvalidState, "acceptance is not a multiple of 5^-2l");
  r.k_xw = kq.get_num();

  // Counter classes: c = 0 for S < 5^{2l}, c = 1 otherwise; every S value
  // in a class carries the same amplitude.
  const mpz_class two_k = 2 * k;
  const mpz_class lt = std::min(two_k, denom);
  const mpq_class weight[2] = {mpq_class(lt), mpq_class(two_k - lt)};
  mpq_class scale(1, two_k);  // |1/sqrt(2k)|^2; numerators carry 5^-e
  {
    mpz_class p5;
    mpz_ui_pow_ui(p5.get_mpz_t(), 5, 2 * static_cast<unsigned long>(st.shared_exponent()));
    scale /= p5;
    scale.canonicalize();
  }
  const std::size_t N = st.dim();
  using Vecq = std::vector<CQ>;
  // index (o * 2 + c) * N + x
  auto make = [&] { return Vecq(4 * N, CQ{0, 0}); };
  auto at = [N](int o, int c, std::size_t x) { return (static_cast<std::size_t>(o) * 2 + c) * N + x; };
  auto inner = [&](const Vecq& a, const Vecq& b) {
    CQ s{0, 0};
    for (int o = 0; o < 2; ++o) {
      for (int c = 0; c < 2; ++c) {
        for (std::size_t x = 0; x < N; ++x) {
          CQ t = conj_mul(a[at(o, c, x)], b[at(o, c, x)]);
          s.re += weight[c] * t.re;
          s.im += weight[c] * t.im;
        }
      }
    }
    return CQ{s.re * scale, s.im * scale};
  };
  auto accept_prob = [&](const Vecq& a) {
    mpq_class s = 0;
    for (int c = 0; c < 2; ++c) {
      for (std::size_t x = 0; x < N; ++x) s += weight[c] * norm2(a[at(1, c, x)]);
    }
    return mpq_class(s * scale);
  };

  Vecq psi = make();
  for (std::size_t x = 0; x < N; ++x) {
    CQ z{mpq_class(st.re()[x]), mpq_class(st.im()[x])};
    const int o = bit_of(x, out, n);
    psi[at(o, 0, x)] = z;
    psi[at(0, 1, x)] = z;
  }
  r.q_acceptance = accept_prob(psi);
  r.q_acceptance.canonicalize();

  Vecq bad = psi;
  for (int c = 0; c < 2; ++c) {
    for (std::size_t x = 0; x < N; ++x) bad[at(1, c, x)] = CQ{0, 0};
  }
  // Q (2|0><0| - I) Q^dag = 2|Psi><Psi| - I
  CQ ov = inner(psi, bad);
  CQ two_ov{2 * ov.re, 2 * ov.im};
  Vecq phi = make();
  for (std::size_t i = 0; i < phi.size(); ++i) {
    CQ t = mul(two_ov, psi[i]);
    phi[i] = CQ{t.re - bad[i].re, t.im - bad[i].im};
  }
  r.rewound = r.q_acceptance + accept_prob(phi);
  r.rewound.canonicalize();

  // Accepted state on R from both rounds (orthogonal through F1) against
  // V's post-selected state.
  mpq_class zn = 0;
  for (std::size_t x = 0; x < N; ++x) {
    if (bit_of(x, out, n)) zn += mpq_class(st.re()[x] * st.re()[x] + st.im()[x] * st.im()[x]);
  }
  r.state_equal = r.rewound > 0 && zn > 0;
  for (std::size_t x = 0; x < N && r.state_equal; ++x) {
    for (std::size_t y = 0; y < N && r.state_equal; ++y) {
      CQ rho{0, 0};
      for (const Vecq* b : {&psi, &phi}) {
        for (int c = 0; c < 2; ++c) {
          CQ t = conj_mul((*b)[at(1, c, y)], (*b)[at(1, c, x)]);
          rho.re += weight[c] * t.re;
          rho.im += weight[c] * t.im;
        }
      }
      rho.re *= scale / r.rewound;
      rho.im *= scale / r.rewound;
      CQ direct{0, 0};
      if (bit_of(x, out, n) && bit_of(y, out, n)) {
        CQ zx{mpq_class(st.re()[x]), mpq_class(st.im()[x])};
        CQ zy{mpq_class(st.re()[y]), mpq_class(st.im()[y])};
        direct = conj_mul(zy, zx);
        direct.re /= zn;
        direct.im /= zn;
      }
      r.state_equal = rho.re == direct.re && rho.im == direct.im;
    }
  }
  return r;
}

FloatRewinding float_rewinding(const RewindingVerifier& rv, std::size_t witness) {
  const RewindingLayout& lay = rv.layout;
  if (lay.width() > kMaxRewindSimQubits) throw Error(ErrorKind::SizeLimit, "rewinding circuit too wide to simulate");
  if (witness >= (std::size_t{1} << lay.m)) throw Error(ErrorKind::IndexOutOfRange, "witness index");
  PureState w = PureState::basis(lay.m, witness);
  FloatRewinding f;
  f.q_acceptance = circuit_acceptance(rv.q, PureState::basis(lay.q_width(), witness << (lay.q_width() - lay.m)));
  f.rewound = acceptance_probability(rv.assembled, w);
  if (f.rewound > kZeroBranchTol) {
    f.fidelity = fidelity(resulting_state(rv.assembled, w), resulting_state(rv.base, w));
  }
  return f;
}

}  // namespace sqlab
