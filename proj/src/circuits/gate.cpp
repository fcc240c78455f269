// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <vector>
#include <cmath>

#include "sqlab/circuits.hpp"
#include "sqlab/linalg.hpp"

namespace sqlab {

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::CNOT: return "CNOT";
    case GateKind::H: return "H";
    case GateKind::T: return "T";
    case GateKind::Tdg: return "Tdg";
    case GateKind::PythR: return "PYTH_R";
    case GateKind::PythI: return "PYTH_I";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::Controlled: return "CONTROLLED";
    case GateKind::Custom: return "CUSTOM";
  }
  return "?";
}

GateKind gate_kind_from_string(const std::string& name) {
  static const std::array<GateKind, 10> all = {GateKind::CNOT, GateKind::H, GateKind::T,
                                               GateKind::Tdg, GateKind::PythR, GateKind::PythI,
                                               GateKind::X, GateKind::Z, GateKind::Controlled,
                                               GateKind::Custom};
  for (GateKind k : all) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorKind::Parse, "unknown gate kind '" + name + "'");
}

std::vector<int> Gate::qubits() const {
  std::vector<int> q = controls;
  q.insert(q.end(), targets.begin(), targets.end());
  return q;
}

Gate Gate::dagger() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
      return g;
    case GateKind::T:
      g.kind = GateKind::Tdg;
      break;
    case GateKind::Tdg:
      g.kind = GateKind::T;
      break;
    case GateKind::PythR:
    case GateKind::PythI:
      g.kind = GateKind::Custom;
      break;
    case GateKind::Controlled:
    case GateKind::Custom:
      break;
  }
  g.matrix = matrix.adjoint();
  return g;
}

bool Gate::exact_compatible() const {
  return kind == GateKind::CNOT || kind == GateKind::PythR || kind == GateKind::PythI ||
         kind == GateKind::X;
}

namespace gates {
namespace {

Gate single(GateKind kind, Mat m, int q) {
  Gate g;
  g.kind = kind;
  g.targets = {q};
  g.matrix = std::move(m);
  return g;
}

Mat mat2(cplx a, cplx b, cplx c, cplx d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

void check_gate_shape(const Mat& u, std::size_t num_targets, std::size_t max_targets = 2) {
  std::size_t dim = std::size_t{1} << num_targets;
  if (num_targets < 1 || num_targets > max_targets || static_cast<std::size_t>(u.rows()) != dim ||
      static_cast<std::size_t>(u.cols()) != dim) {
    throw Error(ErrorKind::DimensionMismatch, "gate matrix does not match its targets");
  }
  if (!is_unitary(u, kUnitaryTol)) throw Error(ErrorKind::InvalidArgument, "gate matrix is not unitary");
}

}  // namespace

Mat pyth_r_matrix() { return mat2(0.8, -0.6, 0.6, 0.8); }
Mat pyth_i_matrix() { return mat2(0.8, cplx(0, 0.6), cplx(0, 0.6), 0.8); }

Gate cnot(int control, int target) {
  Gate g = single(GateKind::CNOT, mat2(0, 1, 1, 0), target);
  g.controls = {control};
  g.control_values = {1};
  return g;
}

Gate h(int q) {
  const double s = 1.0 / std::sqrt(2.0);
  return single(GateKind::H, mat2(s, s, s, -s), q);
}

Gate t(int q) { return single(GateKind::T, mat2(1, 0, 0, std::polar(1.0, M_PI / 4)), q); }
Gate tdg(int q) { return single(GateKind::Tdg, mat2(1, 0, 0, std::polar(1.0, -M_PI / 4)), q); }
Gate pyth_r(int q) { return single(GateKind::PythR, pyth_r_matrix(), q); }
Gate pyth_i(int q) { return single(GateKind::PythI, pyth_i_matrix(), q); }
Gate x(int q) { return single(GateKind::X, mat2(0, 1, 1, 0), q); }
Gate z(int q) { return single(GateKind::Z, mat2(1, 0, 0, -1), q); }

Gate custom(const Mat& u, std::vector<int> targets) {
  check_gate_shape(u, targets.size());
  Gate g;
  g.kind = GateKind::Custom;
  g.targets = std::move(targets);
  g.matrix = u;
  return g;
}

Gate block(const Mat& u, std::vector<int> targets) {
  check_gate_shape(u, targets.size(), kMaxUnitaryQubits);
  Gate g;
  g.kind = GateKind::Custom;
  g.targets = std::move(targets);
  g.matrix = u;
  return g;
}

Gate controlled(const Mat& u, std::vector<int> controls, std::vector<int> targets,
                std::vector<int> control_values) {
  check_gate_shape(u, targets.size(), kMaxUnitaryQubits);
  if (control_values.empty()) control_values.assign(controls.size(), 1);
  if (control_values.size() != controls.size()) {
    throw Error(ErrorKind::InvalidArgument, "one control value per control qubit");
  }
  for (int v : control_values) {
    if (v != 0 && v != 1) throw Error(ErrorKind::InvalidArgument, "control values are bits");
  }
  Gate g;
  g.kind = GateKind::Controlled;
  g.controls = std::move(controls);
  g.control_values = std::move(control_values);
  g.targets = std::move(targets);
  g.matrix = u;
  return g;
}

}  // namespace gates

namespace {

template <class M>
void apply_impl(const Gate& g, M& s, int n) {
  const std::size_t dim = std::size_t{1} << n;
  std::size_t cmask = 0, cval = 0;
  for (std::size_t k = 0; k < g.controls.size(); ++k) {
    std::size_t m = qubit_mask(g.controls[k], n);
    cmask |= m;
    if (g.control_values[k]) cval |= m;
  }
  const int nt = static_cast<int>(g.targets.size());
  const std::size_t sub = std::size_t{1} << nt;
  std::vector<std::size_t> off(sub);
  std::size_t tmask = 0;
  for (std::size_t a = 0; a < sub; ++a) {
    std::size_t o = 0;
    for (int j = 0; j < nt; ++j) {
      if ((a >> (nt - 1 - j)) & 1u) o |= qubit_mask(g.targets[j], n);
    }
    off[a] = o;
    tmask |= o;
  }
  std::vector<cplx> in(sub), out(sub);
  const Mat& u = g.matrix;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & tmask) != 0 || (i & cmask) != cval) continue;
    for (Eigen::Index c = 0; c < s.cols(); ++c) {
      for (std::size_t a = 0; a < sub; ++a) in[a] = s(static_cast<Eigen::Index>(i | off[a]), c);
      for (std::size_t r = 0; r < sub; ++r) {
        cplx acc = 0.0;
        for (std::size_t a = 0; a < sub; ++a) acc += u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a)) * in[a];
        out[r] = acc;
      }
      for (std::size_t a = 0; a < sub; ++a) s(static_cast<Eigen::Index>(i | off[a]), c) = out[a];
    }
  }
}

}  // namespace

void apply_gate(const Gate& g, Vec& state, int num_qubits) { apply_impl(g, state, num_qubits); }
void apply_gate(const Gate& g, Mat& columns, int num_qubits) { apply_impl(g, columns, num_qubits); }

}  // namespace sqlab
