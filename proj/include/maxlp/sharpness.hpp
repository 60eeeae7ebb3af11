#pragma once

// Closed forms for the moments of the staged constructions and the ratio
// sweeps that demonstrate convergence to the sharp constants.
//
// Two families coexist on purpose. The *closed_forms functions evaluate the
// published series bounds: they are the inputs of the small-delta limit
// arguments, and a couple of them deliberately drop or reweight the sigma=0
// term (those are one-sided bounds, not moments). The *law_moments and
// *_norms functions evaluate the exact moments of the sampled laws; these
// are the ones a Monte Carlo run reproduces.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxlp/constants.hpp"

namespace maxlp {

// A geometric series in the closed forms fails to converge for the given
// (beta, delta, p). The message names the violated condition.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// E (1+delta)^(p sigma). Requires rho = (1+delta)^p q < 1.
double stage_moment(double beta, double delta, Exponent p);

// 1 - rho computed without cancellation (rho -> 1 as delta -> 0).
double one_minus_rho(double beta, double delta, Exponent p);

struct Thm1UncappedNorms {
  double x_pow;              // E|X|^p = beta^p E (1+delta)^(p sigma)
  double m_minus_pow_bound;  // E(-M-)^p <= E (1+delta)^(p sigma)
  double rho;
};
Thm1UncappedNorms thm1_uncapped_norms(double beta, double delta, Exponent p);

// Finite-stage construction: the two displayed partial-sum bounds. Both
// share the same sigma>N tail term; neither carries a sigma=0 term.
struct Thm1CappedNorms {
  double m_minus_pow_bound;
  double x_pow;
  double rho;
  double s_n;  // sum_{n=1..N} rho^(n-1)
};
Thm1CappedNorms thm1_capped_norms(double beta, double delta, long N,
                                  Exponent p);

// N -> infinity with delta = K/N: the bounds collapse to expressions in
// E = exp(pK - K/(beta+1)).
struct Thm1CappedKLimit {
  double m_minus_pow_bound;
  double x_pow;
  double growth_factor;  // E
};
Thm1CappedKLimit thm1_capped_limit(double beta, double K, Exponent p);

// K -> infinity ratio limit: 1 + (beta^p - 1)/((beta+1) p).
double thm1_ratio_limit(double beta, Exponent p);

// Second construction, published bound pair. m_minus_pow_bound weights the
// sigma=0 term by beta/(beta+1); m_plus_pow_bound starts at sigma=1.
struct Thm2ClosedForms {
  double m_minus_pow_bound;
  double m_plus_pow_bound;
};
Thm2ClosedForms thm2_closed_forms(double beta, double delta, Exponent p);

// Second construction, exact moments of the sampled law.
struct Thm2LawMoments {
  double m_minus_pow;  // E(-M-)^p = E (1+delta)^(p sigma)
  double m_plus_pow;   // E(M+)^p = (beta+1) I2(beta,p) E (1+delta)^(p sigma)
};
Thm2LawMoments thm2_law_moments(double beta, double delta, Exponent p);

// Third construction (p > 1/2): bound pair and exact law, with the
// (1-beta)/2 atom of the two-sided maximum at the lower barrier.
struct Thm3ClosedForms {
  double m_minus_pow_bound;
  double m_abs_pow_bound;
};
Thm3ClosedForms thm3_closed_forms(double beta, double delta, Exponent p);

struct Thm3LawMoments {
  double m_minus_pow;
  double m_abs_pow;
};
Thm3LawMoments thm3_law_moments(double beta, double delta, Exponent p);

// One evaluated point of a sharpness sweep. ratio == numerator/denominator;
// target is the p-th power of the sharp constant the sweep approaches.
// limit_tag records which limit the closed form has already taken:
// "finite" (exact at the given beta, delta) or "K-limit" (stage count sent
// to infinity at fixed K; K is then set).
struct RatioCurvePoint {
  double beta;
  double delta;
  std::optional<double> K;
  double numerator;
  double denominator;
  double ratio;
  std::string limit_tag;
  double target;
};

// Single sweep points; validate beta against the variant's admissible range.
RatioCurvePoint thm1_ratio_point(Exponent p, double beta, double delta,
                                 double K);
RatioCurvePoint thm2_ratio_point(Exponent p, double beta, double delta);
RatioCurvePoint thm3_ratio_point(Exponent p, double beta, double delta);

// Automated chains: beta climbs through fractions of its admissible cap
// (0.9, 0.99, 0.999, extending to 0.99999 while the last ratio is further
// than tol from the target).
std::vector<RatioCurvePoint> thm1_sharpness_chain(Exponent p, double tol,
                                                  double delta = 1e-6,
                                                  double K = 100.0);
std::vector<RatioCurvePoint> thm2_sharpness_chain(Exponent p, double tol,
                                                  double delta = 1e-6);
std::vector<RatioCurvePoint> thm3_sharpness_chain(Exponent p, double tol,
                                                  double delta = 1e-6);

}  // namespace maxlp
