#pragma once

#include <cmath>
#include <cstddef>

namespace maxlp {

struct QuadResult {
  double value;
  double error;  // |kronrod - gauss|, a conservative estimate
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1,1]. Nodes are the positive abscissae in
// descending order; node[7] is the midpoint. Odd indices form the G7 subset.
inline constexpr double gk_node[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
QuadResult gk15_panel(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = gk_wk[7] * fc;
  double gauss = gk_wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double v = f(c - h * gk_node[i]) + f(c + h * gk_node[i]);
    kron += gk_wk[i] * v;
    if (i % 2 == 1) gauss += gk_wg[i / 2] * v;
  }
  kron *= h;
  gauss *= h;
  return {kron, std::fabs(kron - gauss)};
}

template <class F>
double integrate_rec(F& f, double a, double b, double abs_tol, int depth) {
  const QuadResult r = gk15_panel(f, a, b);
  if (r.error <= abs_tol || depth >= 30) return r.value;
  const double m = 0.5 * (a + b);
  return integrate_rec(f, a, m, 0.5 * abs_tol, depth + 1) +
         integrate_rec(f, m, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace detail

// Adaptive bisection to an absolute tolerance. Intended for smooth
// integrands on finite intervals; improper integrals must be transformed
// by the caller first.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12) {
  if (a == b) return 0.0;
  return detail::integrate_rec(f, a, b, abs_tol, 0);
}

}  // namespace maxlp
