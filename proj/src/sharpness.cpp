#include "maxlp/sharpness.hpp"

#include <cmath>
#include <sstream>

namespace maxlp {

namespace {

[[noreturn]] void diverged(double beta, double delta, double rho) {
  std::ostringstream msg;
  msg << "geometric series diverges: (1+delta)^p (beta(1+delta)+1)/(beta+1)"
      << " = " << rho << " >= 1 at beta = " << beta << ", delta = " << delta
      << "; require rho < 1 (reduce delta or beta)";
  throw DivergenceError(msg.str());
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

double beta_cap_uncapped(double p) { return 1.0 / p - 1.0; }

}  // namespace

double one_minus_rho(double beta, double delta, Exponent pe) {
  const double p = pe.value();
  // rho = (1+d)^{p-1} (beta(1+d)+1)/(beta+1); split 1-rho into the two O(d)
  // pieces (beta+1)(1-(1+d)^{p-1}) and -beta d (1+d)^{p-1} so that no
  // difference of O(1) quantities is formed.
  const double g = std::expm1((p - 1.0) * std::log1p(delta));  // (1+d)^{p-1}-1
  return -g - beta * delta * (1.0 + g) / (beta + 1.0);
}

double stage_moment(double beta, double delta, Exponent pe) {
  const double p = pe.value();
  const double omr = one_minus_rho(beta, delta, pe);
  if (omr <= 0.0) diverged(beta, delta, 1.0 - omr);
  const double b1 = beta + 1.0;
  return 1.0 / b1 +
         beta / b1 * delta * std::pow(1.0 + delta, p - 1.0) / (b1 * omr);
}

Thm1UncappedNorms thm1_uncapped_norms(double beta, double delta, Exponent pe) {
  const double p = pe.value();
  require(beta > 0.0 && delta > 0.0, "require beta > 0 and delta > 0");
  require(beta < beta_cap_uncapped(p),
          "require beta < 1/p - 1 so that the terminal value is integrable");
  const double sm = stage_moment(beta, delta, pe);  // throws on rho >= 1
  Thm1UncappedNorms out;
  out.x_pow = std::pow(beta, p) * sm;
  out.m_minus_pow_bound = sm;
  out.rho = 1.0 - one_minus_rho(beta, delta, pe);
  return out;
}

Thm1CappedNorms thm1_capped_norms(double beta, double delta, long N,
                                  Exponent pe) {
  const double p = pe.value();
  require(beta > 0.0 && delta > 0.0, "require beta > 0 and delta > 0");
  require(N >= 1, "require at least one stage");
  const double a = alpha(pe);
  require(beta < std::pow(a, 1.0 / (1.0 - p)),
          "require beta < alpha^{1/(1-p)}");
  const double b1 = beta + 1.0;
  const double omr = one_minus_rho(beta, delta, pe);
  // S_N = sum_{n=1..N} rho^{n-1} = (1 - rho^N)/(1 - rho), valid for any rho.
  double s_n, rho_n;
  if (omr == 0.0) {
    s_n = static_cast<double>(N);
    rho_n = 1.0;
  } else {
    const double log_rho = std::log1p(-omr);
    rho_n = std::exp(static_cast<double>(N) * log_rho);
    s_n = -std::expm1(static_cast<double>(N) * log_rho) / omr;
  }
  const double head = beta * delta * std::pow(1.0 + delta, p - 1.0) /
                      (b1 * b1) * s_n;
  const double tail = beta / b1 * std::pow(1.0 + delta, p) * rho_n;
  Thm1CappedNorms out;
  out.m_minus_pow_bound = head + tail;
  out.x_pow = std::pow(beta, p) * head + tail;
  out.rho = 1.0 - omr;
  out.s_n = s_n;
  return out;
}

Thm1CappedKLimit thm1_capped_limit(double beta, double K, Exponent pe) {
  const double p = pe.value();
  require(beta > 0.0 && K > 0.0, "require beta > 0 and K > 0");
  const double a = alpha(pe);
  require(beta < std::pow(a, 1.0 / (1.0 - p)),
          "require beta < alpha^{1/(1-p)}");
  const double b1 = beta + 1.0;
  const double x = p - 1.0 / b1;  // growth exponent per unit K
  const double E = std::exp(K * x);
  // (1 - E)/(1 - p - beta p) = expm1(Kx)/(x (beta+1)), -> K/(beta+1) at x=0.
  const double frac = x == 0.0 ? K / b1 : std::expm1(K * x) / (x * b1);
  Thm1CappedKLimit out;
  out.m_minus_pow_bound = beta / b1 * (frac + E);
  out.x_pow = beta / b1 * (std::pow(beta, p) * frac + E);
  out.growth_factor = E;
  return out;
}

double thm1_ratio_limit(double beta, Exponent pe) {
  const double p = pe.value();
  require(beta > 0.0, "require beta > 0");
  return 1.0 + (std::pow(beta, p) - 1.0) / ((beta + 1.0) * p);
}

Thm2ClosedForms thm2_closed_forms(double beta, double delta, Exponent pe) {
  const double p = pe.value();
  require(beta > 0.0 && delta > 0.0, "require beta > 0 and delta > 0");
  require(beta < beta_cap_uncapped(p), "require beta < 1/p - 1");
  const double omr = one_minus_rho(beta, delta, pe);
  if (omr <= 0.0) diverged(beta, delta, 1.0 - omr);
  const double b1 = beta + 1.0;
  const double d_fac = delta * std::pow(1.0 + delta, p - 1.0);
  Thm2ClosedForms out;
  out.m_minus_pow_bound = beta / b1 * (1.0 + d_fac / (b1 * omr));
  out.m_plus_pow_bound =
      beta * d_fac / b1 * tail_integral_I2(beta, pe) / omr;
  return out;
}

Thm2LawMoments thm2_law_moments(double beta, double delta, Exponent pe) {
  const double p = pe.value();
  require(beta > 0.0 && delta > 0.0, "require beta > 0 and delta > 0");
  require(beta < beta_cap_uncapped(p), "require beta < 1/p - 1");
  const double sm = stage_moment(beta, delta, pe);
  Thm2LawMoments out;
  out.m_minus_pow = sm;
  out.m_plus_pow = (beta + 1.0) * tail_integral_I2(beta, pe) * sm;
  return out;
}

namespace {

// (1-beta)/2 + (beta+1) I2(1,p): E[M^p | sigma = n] / (1+delta)^{np} for the
// third construction, where M is the two-sided maximum.
double thm3_stage_coefficient(double beta, Exponent pe) {
  return (1.0 - beta) / 2.0 + (beta + 1.0) * tail_integral_I2(1.0, pe);
}

}  // namespace

Thm3ClosedForms thm3_closed_forms(double beta, double delta, Exponent pe) {
  const double p = pe.value();
  require(p > 0.5, "require p > 1/2 for the two-sided construction");
  require(beta > 0.0 && delta > 0.0, "require beta > 0 and delta > 0");
  require(beta < beta_cap_uncapped(p), "require beta < 1/p - 1");
  const double omr = one_minus_rho(beta, delta, pe);
  if (omr <= 0.0) diverged(beta, delta, 1.0 - omr);
  const double b1 = beta + 1.0;
  const double d_fac = delta * std::pow(1.0 + delta, p - 1.0);
  Thm3ClosedForms out;
  out.m_minus_pow_bound = beta / b1 * (1.0 + d_fac / (b1 * omr));
  out.m_abs_pow_bound =
      thm3_stage_coefficient(beta, pe) * beta * d_fac / (b1 * b1 * omr);
  return out;
}

Thm3LawMoments thm3_law_moments(double beta, double delta, Exponent pe) {
  const double p = pe.value();
  require(p > 0.5, "require p > 1/2 for the two-sided construction");
  require(beta > 0.0 && delta > 0.0, "require beta > 0 and delta > 0");
  require(beta < beta_cap_uncapped(p), "require beta < 1/p - 1");
  const double sm = stage_moment(beta, delta, pe);
  Thm3LawMoments out;
  out.m_minus_pow = sm;
  out.m_abs_pow = thm3_stage_coefficient(beta, pe) * sm;
  return out;
}

RatioCurvePoint thm1_ratio_point(Exponent pe, double beta, double delta,
                                 double K) {
  const double p = pe.value();
  const double p0 = solve_p0();
  RatioCurvePoint pt;
  pt.beta = beta;
  pt.delta = delta;
  pt.target = std::pow(constant_C(pe), p);
  if (p <= p0) {
    const Thm1UncappedNorms n = thm1_uncapped_norms(beta, delta, pe);
    pt.numerator = n.x_pow;
    pt.denominator = n.m_minus_pow_bound;
    pt.limit_tag = "finite";
  } else {
    const Thm1CappedKLimit lim = thm1_capped_limit(beta, K, pe);
    pt.numerator = lim.x_pow;
    pt.denominator = lim.m_minus_pow_bound;
    pt.K = K;
    pt.limit_tag = "K-limit";
  }
  pt.ratio = pt.numerator / pt.denominator;
  return pt;
}

RatioCurvePoint thm2_ratio_point(Exponent pe, double beta, double delta) {
  const double p = pe.value();
  const Thm2LawMoments law = thm2_law_moments(beta, delta, pe);
  RatioCurvePoint pt;
  pt.beta = beta;
  pt.delta = delta;
  pt.numerator = law.m_plus_pow;
  pt.denominator = law.m_minus_pow;
  pt.ratio = pt.numerator / pt.denominator;
  pt.limit_tag = "finite";
  pt.target = std::pow(constant_c(pe), p);
  return pt;
}

RatioCurvePoint thm3_ratio_point(Exponent pe, double beta, double delta) {
  const double p = pe.value();
  const Thm3LawMoments law = thm3_law_moments(beta, delta, pe);
  RatioCurvePoint pt;
  pt.beta = beta;
  pt.delta = delta;
  pt.numerator = law.m_abs_pow;
  pt.denominator = law.m_minus_pow;
  pt.ratio = pt.numerator / pt.denominator;
  pt.limit_tag = "finite";
  pt.target = std::pow(constant_frak_c(pe), p);
  return pt;
}

namespace {

// beta sweeps toward its admissible cap through 1 - 10^{-k}. Three points
// always; two more while the ratio is still further than tol from target.
template <typename PointFn>
std::vector<RatioCurvePoint> run_chain(double cap, double tol, PointFn point) {
  std::vector<RatioCurvePoint> chain;
  double frac = 0.9;
  for (int step = 0; step < 5; ++step) {
    chain.push_back(point(frac * cap));
    const RatioCurvePoint& pt = chain.back();
    if (step >= 2 && std::fabs(pt.ratio - pt.target) <= tol) break;
    frac = 1.0 - (1.0 - frac) / 10.0;
  }
  return chain;
}

}  // namespace

std::vector<RatioCurvePoint> thm1_sharpness_chain(Exponent pe, double tol,
                                                  double delta, double K) {
  const double p = pe.value();
  const double cap = p <= solve_p0() ? beta_cap_uncapped(p)
                                     : std::pow(alpha(pe), 1.0 / (1.0 - p));
  return run_chain(cap, tol, [&](double beta) {
    return thm1_ratio_point(pe, beta, delta, K);
  });
}

std::vector<RatioCurvePoint> thm2_sharpness_chain(Exponent pe, double tol,
                                                  double delta) {
  const double cap = beta_cap_uncapped(pe.value());
  return run_chain(cap, tol,
                   [&](double beta) { return thm2_ratio_point(pe, beta, delta); });
}

std::vector<RatioCurvePoint> thm3_sharpness_chain(Exponent pe, double tol,
                                                  double delta) {
  const double cap = beta_cap_uncapped(pe.value());
  return run_chain(cap, tol,
                   [&](double beta) { return thm3_ratio_point(pe, beta, delta); });
}

}  // namespace maxlp
