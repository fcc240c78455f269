// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqlab/rewinding.hpp"

namespace sqlab {

mpq_class g_eval(const mpq_class& t) {
  if (t < 0 || t > 1) throw Error(ErrorKind::InvalidArgument, "g is defined on [0, 1]", t.get_d());
  mpq_class r = t * t * t / 2 - 2 * t * t + mpq_class(5, 2) * t;
  r.canonicalize();
  return r;
}

bool monotonicity_check(int points) {
  if (points < 2) throw Error(ErrorKind::InvalidArgument, "need at least two grid points");
  mpq_class prev = g_eval(0);
  for (int i = 1; i < points; ++i) {
    mpq_class t(i, points - 1);
    t.canonicalize();
    mpq_class cur = g_eval(t);
    if (cur <= prev) return false;
    prev = cur;
  }
  return true;
}

mpq_class rewinding_success(const mpq_class& p, int iterations) {
  if (p <= 0 || p >= 1) throw Error(ErrorKind::InvalidArgument, "p must lie in (0, 1)", p.get_d());
  if (iterations < 0) throw Error(ErrorKind::InvalidArgument, "iterations must be non-negative");
  mpq_class q = 1 - 2 * p;
  mpq_class f = 1;
  for (int i = 0; i < 2 * iterations; ++i) f *= q;
  mpq_class r = 1 - (1 - p) * f;
  r.canonicalize();
  return r;
}

}  // namespace sqlab
