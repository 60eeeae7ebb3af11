#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace maxlp {

// Bracketed solver: false position with bisection fallback. A bisection step
// is forced whenever the same endpoint survives two secant steps in a row,
// which prevents the one-sided stalling of plain regula falsi. The bracket
// always contains a sign change, so the iteration cannot diverge.
template <class F>
double find_root(F&& f, double lo, double hi, double xtol = 0.0,
                 int max_iter = 200) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::logic_error("find_root: endpoints do not bracket a sign change");
  int same_side = 0;
  int prev_side = 0;  // +1: lo moved, -1: hi moved
  for (int it = 0; it < max_iter; ++it) {
    const double width_tol =
        xtol + 4.0 * std::numeric_limits<double>::epsilon() *
                   std::max(std::fabs(lo), std::fabs(hi));
    if (hi - lo <= width_tol) break;
    double x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi) || same_side >= 2) {
      x = 0.5 * (lo + hi);
      same_side = 0;
    }
    const double fx = f(x);
    if (fx == 0.0) return x;
    const int side = ((fx > 0.0) == (flo > 0.0)) ? +1 : -1;
    if (side > 0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    same_side = (side == prev_side) ? same_side + 1 : 1;
    prev_side = side;
  }
  return 0.5 * (lo + hi);
}

// Doubles hi until [lo, hi] brackets a sign change of f.
template <class F>
std::pair<double, double> grow_bracket(F&& f, double lo, double hi,
                                       int max_doublings = 200) {
  const double flo = f(lo);
  for (int i = 0; i < max_doublings; ++i) {
    if ((f(hi) > 0.0) != (flo > 0.0)) return {lo, hi};
    hi *= 2.0;
  }
  throw std::logic_error("grow_bracket: no sign change found");
}

}  // namespace maxlp
