#pragma once

#include <map>
#include <string>

namespace maxlp {

// Moment exponent p of the three inequalities. The interesting range is
// 0 < p < 1; by default construction is restricted to [0.01, 0.99] because
// the defining expressions contain powers like (1/p - 1)^{1/p} that overflow
// near the endpoints. Out-of-range values throw std::domain_error.
class Exponent {
 public:
  explicit Exponent(double p, double lo = 0.01, double hi = 0.99);
  double value() const { return p_; }

 private:
  double p_;
};

// h(p) = (1/p - 1) - (1/p - 1)^{1-p} - 1. The threshold exponent p0 is its
// unique root in (0,1); h > 0 to the left of p0 and < 0 to the right.
double p0_equation(double p);

// Root of p0_equation on the fixed bracket (1e-6, 1 - 1e-6), solved to
// machine precision; |h(result)| <= tol is asserted.
double solve_p0(double tol = 1e-12);

// For p <= p0 the closed form ((1-p)/p)^{1-p}; for larger p the root > 1 of
// (1-p)(a^{1/(1-p)} + 1) = a + 1, located by doubling the bracket (1, 2].
double alpha(Exponent p);

// (1-p)/p up to the threshold exponent, (1 + 1/alpha)^{1/p} beyond it.
double constant_C(Exponent p);

// Integral of s^{p-1}/(s+1) over (a, infinity). Substituting s = 1/t and
// then t = u^{1/(1-p)} yields the bounded smooth integrand
//   u -> 1 / ((1-p)(1 + u^{1/(1-p)}))   on [0, a^{-(1-p)}],
// which is evaluated by adaptive quadrature to the given absolute tolerance.
double tail_integral_I1(double a, Exponent p, double tol = 1e-12);

// Integral of s^p/(s+1)^2 over (a, infinity); same substitutions give
//   u -> 1 / ((1-p)(1 + u^{1/(1-p)})^2)  on the same interval.
double tail_integral_I2(double a, Exponent p, double tol = 1e-12);

// ((1/p - 1)^p + I1(1/p - 1, p))^{1/p}.
double constant_c(Exponent p);

// Equals constant_c for p <= 1/2 and (1 + I1(1, p))^{1/p} above. The two
// branches agree at p = 1/2 where 1/p - 1 = 1.
double constant_frak_c(Exponent p);

// All constants for one exponent, computed eagerly so downstream code never
// re-solves. residuals records how well each defining equation is satisfied:
//   "p0"     |h(p0)|
//   "alpha"  |(1-p)(a^{1/(1-p)}+1) - (a+1)| for p > p0, 0 on the closed form
//   "ibp_c"  |p * c^p - I2(1/p - 1, p)|, the integration-by-parts identity
struct ConstantsBundle {
  double p;
  double p0;
  double alpha;
  double C;
  double c;
  double frak_c;
  std::map<std::string, double> residuals;

  static ConstantsBundle compute(Exponent p, double tol = 1e-12);
};

}  // namespace maxlp
