#include "maxlp/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "maxlp/quadrature.hpp"
#include "maxlp/roots.hpp"

namespace maxlp {

Exponent::Exponent(double p, double lo, double hi) : p_(p) {
  if (!(p >= lo && p <= hi))
    throw std::domain_error("exponent p = " + std::to_string(p) +
                            " outside the accepted range [" +
                            std::to_string(lo) + ", " + std::to_string(hi) +
                            "]");
}

double p0_equation(double p) {
  const double r = 1.0 / p - 1.0;
  return r - std::pow(r, 1.0 - p) - 1.0;
}

double solve_p0(double tol) {
  static const double root = find_root(p0_equation, 1e-6, 1.0 - 1e-6);
  if (!(std::fabs(p0_equation(root)) <= tol))
    throw std::logic_error("solve_p0: residual exceeds tolerance");
  return root;
}

namespace {

double alpha_equation(double a, double p) {
  return (1.0 - p) * (std::pow(a, 1.0 / (1.0 - p)) + 1.0) - (a + 1.0);
}

}  // namespace

double alpha(Exponent pe) {
  const double p = pe.value();
  if (p <= solve_p0()) return std::pow((1.0 - p) / p, 1.0 - p);
  // The defining function is negative on (0,1] and grows superlinearly, so
  // the root is bracketed by doubling from hi = 2.
  auto f = [p](double a) { return alpha_equation(a, p); };
  auto [lo, hi] = grow_bracket(f, 1.0, 2.0);
  return find_root(f, lo, hi);
}

double constant_C(Exponent pe) {
  const double p = pe.value();
  if (p <= solve_p0()) return (1.0 - p) / p;
  return std::pow(1.0 + 1.0 / alpha(pe), 1.0 / p);
}

namespace {

double tail_interval_end(double a, double p) { return std::pow(a, p - 1.0); }

}  // namespace

double tail_integral_I1(double a, Exponent pe, double tol) {
  if (!(a > 0.0)) throw std::domain_error("tail_integral_I1: a must be > 0");
  const double p = pe.value();
  const double m = 1.0 / (1.0 - p);
  auto f = [m, p](double u) {
    return 1.0 / ((1.0 - p) * (1.0 + std::pow(u, m)));
  };
  return integrate(f, 0.0, tail_interval_end(a, p), tol);
}

double tail_integral_I2(double a, Exponent pe, double tol) {
  if (!(a > 0.0)) throw std::domain_error("tail_integral_I2: a must be > 0");
  const double p = pe.value();
  const double m = 1.0 / (1.0 - p);
  auto f = [m, p](double u) {
    const double d = 1.0 + std::pow(u, m);
    return 1.0 / ((1.0 - p) * d * d);
  };
  return integrate(f, 0.0, tail_interval_end(a, p), tol);
}

double constant_c(Exponent pe) {
  const double p = pe.value();
  const double a = 1.0 / p - 1.0;
  return std::pow(std::pow(a, p) + tail_integral_I1(a, pe), 1.0 / p);
}

double constant_frak_c(Exponent pe) {
  const double p = pe.value();
  if (p <= 0.5) return constant_c(pe);
  return std::pow(1.0 + tail_integral_I1(1.0, pe), 1.0 / p);
}

ConstantsBundle ConstantsBundle::compute(Exponent pe, double tol) {
  const double p = pe.value();
  ConstantsBundle b;
  b.p = p;
  b.p0 = solve_p0(tol);
  b.alpha = maxlp::alpha(pe);
  b.C = constant_C(pe);
  b.c = constant_c(pe);
  b.frak_c = constant_frak_c(pe);
  b.residuals["p0"] = std::fabs(p0_equation(b.p0));
  b.residuals["alpha"] =
      p > b.p0 ? std::fabs(alpha_equation(b.alpha, p)) : 0.0;
  b.residuals["ibp_c"] = std::fabs(
      p * std::pow(b.c, p) - tail_integral_I2(1.0 / p - 1.0, pe, tol));
  if (!(b.p0 > 0.0 && b.p0 < 1.0 && b.alpha > 0.0 && b.C >= 1.0 &&
        b.c >= 1.0 && b.c <= b.frak_c + 1e-12))
    throw std::logic_error("ConstantsBundle: ordering invariants violated");
  return b;
}

}  // namespace maxlp
