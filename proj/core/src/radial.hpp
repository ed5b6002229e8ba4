#pragma once

// Internal radial-kernel evaluation shared by the basis and the transforms.
// The Laguerre recurrence runs in double-double arithmetic; near the
// polynomial's roots this keeps the absolute error at the level of the
// oscillation amplitude times ~1e-31, which the pointwise eigenrelation and
// Laguerre-consistency checks rely on.

#include <vector>

#include "dd.hpp"

namespace landau::detail {

// x^2 + y^2 without intermediate rounding.
inline dd radius_sq_dd(double x, double y) {
  return dd_add(two_prod(x, x), two_prod(y, y));
}

// out[i] = L_i^(alpha)(t) for i = 0..pmax. out must hold pmax+1 values.
inline void laguerre_seq(unsigned pmax, unsigned alpha, dd t, double* out) {
  dd lm1{1.0, 0.0};  // L_0
  out[0] = 1.0;
  if (pmax == 0) return;
  dd l = dd_add(dd_neg(t), double(1 + alpha));  // L_1
  out[1] = to_double(l);
  for (unsigned p = 2; p <= pmax; ++p) {
    dd c = dd_add(dd_neg(t), double(2 * p - 1 + alpha));
    dd next = dd_sub(dd_mul(c, l), dd_mul(lm1, double(p - 1 + alpha)));
    next = dd_div(next, double(p));
    lm1 = l;
    l = next;
    out[p] = to_double(l);
  }
}

inline double laguerre_at(unsigned p, unsigned alpha, dd t) {
  std::vector<double> buf(p + 1);
  laguerre_seq(p, alpha, t, buf.data());
  return buf[p];
}

}  // namespace landau::detail
