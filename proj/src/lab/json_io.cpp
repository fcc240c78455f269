// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>

#include "sqlab/lab.hpp"

namespace sqlab::lab {

#ifndef SQLAB_VERSION
#define SQLAB_VERSION "dev"
#endif

const char* version() { return SQLAB_VERSION; }

std::string fmt(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates()) {
    json jg{{"kind", to_string(g.kind)}, {"targets", g.targets}};
    if (!g.controls.empty()) {
      jg["controls"] = g.controls;
      jg["values"] = g.control_values;
    }
    if (g.kind == GateKind::Custom || g.kind == GateKind::Controlled) {
      json m = json::array();
      for (Eigen::Index i = 0; i < g.matrix.rows(); ++i) {
        for (Eigen::Index k = 0; k < g.matrix.cols(); ++k) m.push_back({g.matrix(i, k).real(), g.matrix(i, k).imag()});
      }
      jg["matrix"] = m;
    }
    gates.push_back(jg);
  }
  json regs = json::object();
  for (const auto& [name, r] : c.registers()) regs[name] = {r.start, r.size};
  return {{"qubits", c.num_qubits()}, {"output", c.output_qubit()}, {"gates", gates}, {"registers", regs}};
}

namespace {

Mat matrix_from_json(const json& j, std::size_t targets) {
  const std::size_t dim = std::size_t{1} << targets;
  if (!j.is_array() || j.size() != dim * dim) {
    throw Error(ErrorKind::Parse, "matrix must list " + std::to_string(dim * dim) + " [re, im] entries");
  }
  Mat m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim * dim; ++i) {
    const json& e = j[i];
    if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::Parse, "matrix entry must be [re, im]");
    m(static_cast<Eigen::Index>(i / dim), static_cast<Eigen::Index>(i % dim)) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

}  // namespace

Circuit circuit_from_json(const json& j) {
  try {
    Circuit c(j.at("qubits").get<int>(), j.value("output", 0));
    std::size_t idx = 0;
    for (const json& g : j.at("gates")) {
      const std::string where = "gates[" + std::to_string(idx++) + "]";
      const GateKind kind = gate_kind_from_string(g.at("kind").get<std::string>());
      auto targets = g.at("targets").get<std::vector<int>>();
      auto controls = g.value("controls", std::vector<int>{});
      auto values = g.value("values", std::vector<int>{});
      if (targets.empty()) throw Error(ErrorKind::Parse, where + ": no targets");
      const int t = targets[0];
      switch (kind) {
        case GateKind::CNOT:
          if (controls.size() != 1) throw Error(ErrorKind::Parse, where + ": CNOT needs one control");
          c.add(gates::cnot(controls[0], t));
          break;
        case GateKind::H: c.add(gates::h(t)); break;
        case GateKind::T: c.add(gates::t(t)); break;
        case GateKind::Tdg: c.add(gates::tdg(t)); break;
        case GateKind::PythR: c.add(gates::pyth_r(t)); break;
        case GateKind::PythI: c.add(gates::pyth_i(t)); break;
        case GateKind::X: c.add(gates::x(t)); break;
        case GateKind::Z: c.add(gates::z(t)); break;
        case GateKind::Custom: c.add(gates::block(matrix_from_json(g.at("matrix"), targets.size()), targets)); break;
        case GateKind::Controlled:
          c.add(gates::controlled(matrix_from_json(g.at("matrix"), targets.size()), controls, targets, values));
          break;
      }
    }
    if (j.contains("registers")) {
      for (const auto& [name, r] : j["registers"].items()) c.set_register(name, r.at(0).get<int>(), r.at(1).get<int>());
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("circuit JSON: ") + e.what());
  }
}

}  // namespace sqlab::lab
