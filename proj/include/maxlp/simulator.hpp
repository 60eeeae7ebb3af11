#pragma once

// Exact samplers for the staged Brownian constructions that realize the
// extremal ratios, plus a literal random-walk path oracle used to validate
// them. A construction runs in stages indexed n = 0, 1, ...; during stage n
// the path moves between a lower barrier -(1+delta)^n and an upper barrier
// beta*(1+delta)^n, and sigma is the index of the first stage that exits
// through its upper barrier.

#include <cstdint>

#include "maxlp/constants.hpp"
#include "maxlp/rng.hpp"

namespace maxlp {

enum class Variant {
  Thm1Uncapped,  // stop at the upper barrier of stage sigma
  Thm1Capped,    // after cap+1 down-stages, plunge one level further and stop
  Thm2,          // after the stage-sigma rise, fall back to the lower barrier
  Thm3,          // same path as Thm2; tracked statistic is the two-sided max
};

// Validated parameter set. Construct through make(); the constraints keep
// the stage distribution honest (each variant needs beta inside a p
// dependent range, and the uncapped first-variant moments only exist when
// the stage growth rate rho stays below 1).
struct StagedParams {
  Variant variant;
  double p;
  double beta;
  double delta;
  int cap;  // -1 when the variant does not truncate

  // Probability that a stage beyond the first continues downwards.
  double q() const;
  // Growth-adjusted continuation rate (1+delta)^p * q.
  double rho() const;

  static StagedParams make(Variant variant, Exponent p, double beta,
                           double delta, int cap = -1);
};

// One realized construction. m_minus is the running minimum (nonpositive),
// m_plus the running maximum (nonnegative), m_abs = max(m_plus, -m_minus).
// capped marks first-variant paths that exhausted all cap+1 stages.
struct SampleOutcome {
  int sigma;
  bool capped;
  double x_term;
  double m_plus;
  double m_minus;
  double m_abs;
};

// Stage index distribution: P(sigma = 0) = 1/(beta+1) and
// P(sigma = n) = beta/(beta+1) * q^(n-1) * (1-q) for n >= 1. For capped
// variants the loop stops after cap+1 failures and reports cap+1.
int sample_sigma(const StagedParams& params, CounterRng& rng);

// Minimum of a Brownian path started at s and conditioned to reach u
// before l (l < s < u). Inverse-CDF draw from
// P(min <= y) = (u-s)(y-l) / ((u-y)(s-l)), y in [l, s].
double sample_conditional_min(double s, double l, double u, CounterRng& rng);

// Maximum of a Brownian path started at s and conditioned to reach l
// before u. Inverse-CDF draw from P(max >= m) = (s-l)(u-m)/((m-l)(u-s)).
double sample_conditional_max(double s, double l, double u, CounterRng& rng);

// Maximum of a Brownian path started at s and stopped on reaching l < s,
// with no upper barrier: P(max >= y) = (s-l)/(y-l) for y >= s.
double sample_plunge_max(double s, double l, CounterRng& rng);

// Running maximum of the second/third-variant construction given sigma = n:
// P(M+ >= y) = (beta+1)(1+delta)^n / (y + (1+delta)^n) down to its support
// point beta*(1+delta)^n.
double sample_mplus_tail(int sigma, double beta, double delta,
                         CounterRng& rng);

// Draws a full construction outcome using the exact stage and extremum laws.
SampleOutcome sample_outcome(const StagedParams& params, CounterRng& rng);

// Same, but with the stage index supplied by the caller (stratified runs
// draw sigma per stratum). For the capped variant, sigma = cap+1 means the
// path went down through every stage.
SampleOutcome sample_outcome_given_sigma(const StagedParams& params,
                                         int sigma, CounterRng& rng);

// Literal simple-random-walk segment on the lattice h = sqrt(dt): from s,
// absorbed at the first lattice point at or past l (down) or u (up).
struct WalkSegmentResult {
  bool exited_up;
  double exit_value;
  double min;
  double max;
  std::uint64_t steps;
};
WalkSegmentResult walk_segment(double s, double l, double u, double dt,
                               CounterRng& rng);

// Literal walk through the staged construction. Stages at or past
// stop_at_stage are not simulated: a path that survives that far comes back
// truncated (sigma = stop_at_stage, extrema of the simulated prefix only).
// Keeping a stop bound matters because an unbounded stage sequence has
// geometrically growing expected exit times. Only the first-variant
// (uncapped) path shape is simulated; it shares the stage law with the
// others.
struct WalkOutcome {
  int sigma;
  bool truncated;
  double x_term;
  double m_plus;
  double m_minus;
  std::uint64_t steps;
};
WalkOutcome walk_staged(const StagedParams& params, double dt,
                        int stop_at_stage, CounterRng& rng);

}  // namespace maxlp
