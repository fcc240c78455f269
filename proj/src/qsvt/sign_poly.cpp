// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "sqlab/qsvt.hpp"

namespace sqlab {
namespace {

// Smallest y with erfc(y) <= target, by bisection.
double erfc_inverse(double target) {
  double lo = 0.0, hi = 30.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (std::erfc(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

// Smallest odd d with sum_{i > d} |c_i| <= budget, or -1.
int truncation_degree(const RVec& c, double budget) {
  const Eigen::Index n = c.size();
  std::vector<double> tail(static_cast<std::size_t>(n) + 1, 0.0);
  for (Eigen::Index i = n - 1; i >= 0; --i) tail[static_cast<std::size_t>(i)] = tail[static_cast<std::size_t>(i) + 1] + std::abs(c(i));
  for (Eigen::Index d = 1; d < n; d += 2) {
    if (tail[static_cast<std::size_t>(d) + 1] <= budget) return static_cast<int>(d);
  }
  return -1;
}

void zero_even(RVec& c) {
  for (Eigen::Index i = 0; i < c.size(); i += 2) c(i) = 0.0;
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1/2)");
}

}  // namespace

std::vector<double> chebyshev_nodes(int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = std::cos(M_PI * (j + 0.5) / n);
  return x;
}

RVec chebyshev_project(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  RVec c = RVec::Zero(n);
  for (int j = 0; j < n; ++j) {
    const double x = std::cos(M_PI * (j + 0.5) / n);
    const double f = values[static_cast<std::size_t>(j)];
    double tkm1 = 1.0, tk = x;
    c(0) += f;
    if (n > 1) c(1) += f * x;
    for (int k = 2; k < n; ++k) {
      double tkp1 = 2.0 * x * tk - tkm1;
      c(k) += f * tkp1;
      tkm1 = tk;
      tk = tkp1;
    }
  }
  c *= 2.0 / n;
  c(0) *= 0.5;
  return c;
}

double chebyshev_eval(const RVec& c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (Eigen::Index k = c.size() - 1; k >= 1; --k) {
    double b0 = 2.0 * x * b1 - b2 + c(k);
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + (c.size() ? c(0) : 0.0);
}

double SignPolynomial::operator()(double x) const {
  if (basis == PolyBasis::Chebyshev) return chebyshev_eval(coefficients, x);
  double acc = 0.0;
  for (Eigen::Index k = coefficients.size() - 1; k >= 0; --k) acc = acc * x + coefficients(k);
  return acc;
}

RVec SignPolynomial::chebyshev() const {
  if (basis == PolyBasis::Chebyshev) return coefficients;
  std::vector<double> v;
  for (double x : chebyshev_nodes(degree + 1)) v.push_back((*this)(x));
  return chebyshev_project(v);
}

SignPolynomial approx_sign_erf(double delta, double eps) {
  if (!(delta > 0.0 && delta <= 1.0)) throw Error(ErrorKind::InvalidArgument, "delta must lie in (0, 1]");
  check_eps(eps);
  const double k = erfc_inverse(eps / 8.0) / delta;
  const double scale = 1.0 - eps / 4.0;
  const double estimate = kErfDegreeConstant * std::log(1.0 / eps) / delta;
  if (estimate > 1.5 * kErfDegreeCap) {
    throw Error(ErrorKind::SizeLimit, "sign polynomial degree would exceed " + std::to_string(kErfDegreeCap), estimate);
  }
  int n = 64;
  while (n < 4 * estimate + 64) n *= 2;
  std::vector<double> v;
  for (double x : chebyshev_nodes(n)) v.push_back(scale * std::erf(k * x));
  RVec c = chebyshev_project(v);
  zero_even(c);
  int d = truncation_degree(c, eps / 8.0);
  if (d < 0 || d > kErfDegreeCap) {
    throw Error(ErrorKind::SizeLimit, "sign polynomial degree exceeds " + std::to_string(kErfDegreeCap), d);
  }
  return {PolyBasis::Chebyshev, c.head(d + 1), d, delta, eps};
}

// erf(kx) = (2k/sqrt(pi)) sum_j (-1)^j e^{-a}[I_j(a) + I_{j+1}(a)] T_{2j+1}(x) / (2j+1)
// with a = k^2/2; the scaled Bessel values come from Miller's backward
// recurrence normalised by I_0 + 2 sum_{j>=1} I_j = e^a.
SignPolynomial approx_sign_chebyshev(double eps) {
  check_eps(eps);
  const double k = erfc_inverse(eps / 8.0) / eps;
  const double a = 0.5 * k * k;
  const double scale = 1.0 - eps / 4.0;
  const int jmax = kChebyshevDegreeCap / 2 + 1;
  const int start = jmax + 64 + static_cast<int>(std::ceil(12.0 * std::sqrt(a)));
  std::vector<double> bessel(static_cast<std::size_t>(start) + 2, 0.0);
  bessel[static_cast<std::size_t>(start)] = 1e-300;
  for (int j = start; j >= 1; --j) {
    bessel[static_cast<std::size_t>(j) - 1] = bessel[static_cast<std::size_t>(j) + 1] + (2.0 * j / a) * bessel[static_cast<std::size_t>(j)];
    if (bessel[static_cast<std::size_t>(j) - 1] > 1e250) {
      for (int i = j - 1; i <= start; ++i) bessel[static_cast<std::size_t>(i)] *= 1e-250;
    }
  }
  double norm = bessel[0];
  for (int j = 1; j <= start; ++j) norm += 2.0 * bessel[static_cast<std::size_t>(j)];
  for (double& b : bessel) b /= norm;

  RVec c = RVec::Zero(2 * jmax + 2);
  const double pref = scale * 2.0 * k / std::sqrt(M_PI);
  for (int j = 0; j <= jmax; ++j) {
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    c(2 * j + 1) = pref * sign * (bessel[static_cast<std::size_t>(j)] + bessel[static_cast<std::size_t>(j) + 1]) / (2 * j + 1);
  }
  int d = truncation_degree(c, eps / 8.0);
  if (d < 0 || d > kChebyshevDegreeCap) {
    throw Error(ErrorKind::SizeLimit, "Chebyshev sign polynomial degree exceeds " + std::to_string(kChebyshevDegreeCap), d);
  }
  return {PolyBasis::Chebyshev, c.head(d + 1), d, eps, eps};
}

SignPolynomial threshold_polynomial(double a, double b, double eps, PolyBackend backend) {
  if (!(a >= 0.0 && a < b && b <= 1.0)) throw Error(ErrorKind::InvalidArgument, "need 0 <= a < b <= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
  const double t = 0.5 * (a + b);
  const double delta = 0.5 * (b - a);
  const SignPolynomial e = backend == PolyBackend::Erf ? approx_sign_erf(0.5 * delta, 0.5 * eps)
                                                       : approx_sign_chebyshev(std::min(0.5 * eps, 0.5 * delta));
  const double ep = 0.5 * eps;
  const int d = e.degree;
  std::vector<double> v;
  for (double x : chebyshev_nodes(d + 1)) {
    v.push_back(0.5 * ((1.0 - ep) * e(0.5 * (x + t)) + (1.0 - ep) * e(0.5 * (x - t)) + 2.0 * ep * e(0.5 * x)));
  }
  RVec c = chebyshev_project(v);
  zero_even(c);
  return {PolyBasis::Chebyshev, c, d, delta, eps};
}

}  // namespace sqlab
