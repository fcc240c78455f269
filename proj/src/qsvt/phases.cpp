// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

// Phase finding in the W_x convention with symmetric phases, solved by
// Newton's method on Chebyshev nodes, then mapped to reflection phases.

#include <Eigen/LU>
#include <array>
#include <cmath>
#include <complex>

#include "sqlab/qsvt.hpp"

namespace sqlab {
namespace {

using lcplx = std::complex<long double>;
using M2 = std::array<lcplx, 4>;  // row-major 2x2

M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

M2 ident() { return {lcplx(1), lcplx(0), lcplx(0), lcplx(1)}; }

M2 zphase(long double phi) { return {std::polar(1.0L, phi), lcplx(0), lcplx(0), std::polar(1.0L, -phi)}; }

M2 wx(long double x) {
  long double s = std::sqrt(std::max(0.0L, 1.0L - x * x));
  return {lcplx(x), lcplx(0, s), lcplx(0, s), lcplx(x)};
}

constexpr int kMaxNewton = 100;
constexpr double kNewtonTol = 1e-14;
constexpr double kGridTol = 1e-8;
constexpr int kGridPoints = 1000;
constexpr int kAdmissibilityPoints = 10000;

// Value Re[U]_00 and its gradient with respect to the reduced phases.
void evaluate(const std::vector<long double>& full, long double x, int dt, long double& value,
              std::vector<long double>& grad) {
  const int d = static_cast<int>(full.size()) - 1;
  const M2 w = wx(x);
  std::vector<M2> prefix(static_cast<std::size_t>(d) + 1), suffix(static_cast<std::size_t>(d) + 1);
  // U = A_0 W A_1 W ... W A_d; prefix[j] = A_0 W ... A_{j-1} W, suffix[j] = W A_{j+1} ... A_d
  prefix[0] = ident();
  for (int j = 1; j <= d; ++j) prefix[j] = mul(mul(prefix[j - 1], zphase(full[j - 1])), w);
  suffix[d] = ident();
  for (int j = d - 1; j >= 0; --j) suffix[j] = mul(mul(w, zphase(full[j + 1])), suffix[j + 1]);
  value = mul(mul(prefix[0], zphase(full[0])), suffix[0])[0].real();
  grad.assign(static_cast<std::size_t>(dt), 0.0L);
  for (int j = 0; j <= d; ++j) {
    M2 dz = zphase(full[j]);
    dz[0] *= lcplx(0, 1);
    dz[3] *= lcplx(0, -1);
    long double g = mul(mul(prefix[j], dz), suffix[j])[0].real();
    grad[static_cast<std::size_t>(j < dt ? j : d - j)] += g;
  }
}

std::vector<long double> expand(const std::vector<long double>& reduced, int d) {
  std::vector<long double> full(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    int k = j < static_cast<int>(reduced.size()) ? j : d - j;
    full[static_cast<std::size_t>(j)] = reduced[static_cast<std::size_t>(k)];
  }
  return full;
}

double wrap(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a > M_PI) a -= 2.0 * M_PI;
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

}  // namespace

double qsp_response(const std::vector<double>& angles, double x) {
  long double s = std::sqrt(std::max(0.0L, 1.0L - static_cast<long double>(x) * x));
  lcplx r0(1), r1(0);  // row vector <0| times the product so far
  for (double phi : angles) {
    lcplx e = std::polar(1.0L, static_cast<long double>(phi));
    lcplx a0 = r0 * e, a1 = r1 * std::conj(e);
    r0 = a0 * static_cast<long double>(x) + a1 * s;
    r1 = a0 * s - a1 * static_cast<long double>(x);
  }
  return static_cast<double>(r0.real());
}

PhaseSequence find_phases(const SignPolynomial& p) {
  const int d = p.degree;
  RVec c = p.chebyshev();
  if (d < 1 || d % 2 == 0) throw Error(ErrorKind::InvalidArgument, "phase finding needs an odd degree");
  if (d > kPhaseDegreeCap) {
    throw Error(ErrorKind::SizeLimit, "phase finding is limited to degree " + std::to_string(kPhaseDegreeCap), d);
  }
  for (Eigen::Index i = 0; i < c.size(); i += 2) {
    if (std::abs(c(i)) > 1e-12) throw Error(ErrorKind::InvalidArgument, "polynomial is not odd", std::abs(c(i)));
  }
  double peak = 0.0;
  for (int i = 0; i < kAdmissibilityPoints; ++i) {
    double x = -1.0 + 2.0 * i / (kAdmissibilityPoints - 1);
    peak = std::max(peak, std::abs(chebyshev_eval(c, x)));
  }
  if (peak > 1.0 + 1e-12) throw Error(ErrorKind::InvalidArgument, "polynomial exceeds 1 in magnitude", peak);

  const int dt = (d + 1) / 2;
  std::vector<double> nodes(static_cast<std::size_t>(dt)), target(static_cast<std::size_t>(dt));
  for (int j = 0; j < dt; ++j) {
    nodes[j] = std::cos((2.0 * (j + 1) - 1.0) * M_PI / (4.0 * dt));
    target[j] = chebyshev_eval(c, nodes[j]);
  }
  std::vector<long double> reduced(static_cast<std::size_t>(dt), 0.0L);
  reduced[0] = M_PI / 4;

  PhaseSequence out;
  Eigen::MatrixXd jac(dt, dt);
  Eigen::VectorXd res(dt);
  std::vector<long double> grad;
  double err = 1.0;
  int it = 0;
  for (; it < kMaxNewton; ++it) {
    std::vector<long double> full = expand(reduced, d);
    for (int j = 0; j < dt; ++j) {
      long double val;
      evaluate(full, nodes[j], dt, val, grad);
      res(j) = static_cast<double>(val - target[j]);
      for (int k = 0; k < dt; ++k) jac(j, k) = static_cast<double>(grad[k]);
    }
    err = res.cwiseAbs().maxCoeff();
    if (err < kNewtonTol) break;
    Eigen::VectorXd step = jac.partialPivLu().solve(res);
    if (!step.allFinite()) throw Error(ErrorKind::NonConvergence, "singular Newton step", err);
    for (int k = 0; k < dt; ++k) reduced[k] -= step(k);
  }
  out.newton_iterations = it;

  std::vector<long double> full = expand(reduced, d);
  out.angles.resize(static_cast<std::size_t>(d));
  out.angles[0] = wrap(static_cast<double>(full[0] + full[d]) - M_PI / 2 + d * M_PI / 2);
  for (int j = 1; j < d; ++j) out.angles[j] = wrap(static_cast<double>(full[j]) - M_PI / 2);

  double worst = 0.0;
  for (int i = 0; i < kGridPoints; ++i) {
    double x = -1.0 + 2.0 * i / (kGridPoints - 1);
    worst = std::max(worst, std::abs(qsp_response(out.angles, x) - chebyshev_eval(c, x)));
  }
  out.residual = worst;
  if (worst > kGridTol) {
    throw Error(ErrorKind::NonConvergence,
                "phase sequence misses the polynomial after " + std::to_string(it) + " Newton steps", worst);
  }
  return out;
}

}  // namespace sqlab
