#include "maxlp/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace maxlp {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::domain_error(msg);
}

}  // namespace

double StagedParams::q() const {
  return (beta * (1.0 + delta) + 1.0) / ((beta + 1.0) * (1.0 + delta));
}

double StagedParams::rho() const {
  return std::pow(1.0 + delta, p) * q();
}

StagedParams StagedParams::make(Variant variant, Exponent pe, double beta,
                                double delta, int cap) {
  const double p = pe.value();
  require(std::isfinite(beta) && beta > 0.0, "beta must be positive");
  require(std::isfinite(delta) && delta > 0.0, "delta must be positive");

  StagedParams out{variant, p, beta, delta, cap};
  switch (variant) {
    case Variant::Thm1Uncapped: {
      require(beta < 1.0 / p - 1.0,
              "first variant (uncapped) needs beta < 1/p - 1");
      require(out.rho() < 1.0,
              "first variant (uncapped) needs (1+delta)^p * q < 1; "
              "reduce delta or beta");
      require(cap < 0, "cap is only meaningful for the capped variant");
      break;
    }
    case Variant::Thm1Capped: {
      require(cap >= 0, "capped variant needs a stage cap >= 0");
      const double a = alpha(pe);
      require(beta < std::pow(a, 1.0 / (1.0 - p)),
              "capped variant needs beta < alpha^(1/(1-p))");
      break;
    }
    case Variant::Thm2: {
      require(beta < 1.0 / p - 1.0, "second variant needs beta < 1/p - 1");
      require(cap < 0, "cap is only meaningful for the capped variant");
      break;
    }
    case Variant::Thm3: {
      require(p > 0.5, "third variant needs p > 1/2");
      require(beta < 1.0 / p - 1.0, "third variant needs beta < 1/p - 1");
      require(cap < 0, "cap is only meaningful for the capped variant");
      break;
    }
  }
  return out;
}

int sample_sigma(const StagedParams& params, CounterRng& rng) {
  const double beta = params.beta;
  if (rng.uniform() < 1.0 / (beta + 1.0)) return 0;
  const double stop = 1.0 - params.q();
  for (int n = 1;; ++n) {
    if (params.cap >= 0 && n > params.cap) return params.cap + 1;
    if (rng.uniform() < stop) return n;
  }
}

double sample_conditional_min(double s, double l, double u, CounterRng& rng) {
  const double v = rng.uniform();
  return (l * (u - s) + u * v * (s - l)) / ((u - s) + v * (s - l));
}

double sample_conditional_max(double s, double l, double u, CounterRng& rng) {
  const double v = rng.uniform();
  return (u * (s - l) + l * v * (u - s)) / ((s - l) + v * (u - s));
}

double sample_plunge_max(double s, double l, CounterRng& rng) {
  return l + (s - l) / rng.uniform_oc();
}

double sample_mplus_tail(int sigma, double beta, double delta,
                         CounterRng& rng) {
  const double level = std::pow(1.0 + delta, sigma);
  return (beta + 1.0) * level / rng.uniform_oc() - level;
}

SampleOutcome sample_outcome(const StagedParams& params, CounterRng& rng) {
  return sample_outcome_given_sigma(params, sample_sigma(params, rng), rng);
}

SampleOutcome sample_outcome_given_sigma(const StagedParams& params, int sigma,
                                         CounterRng& rng) {
  const double beta = params.beta;
  const double growth = 1.0 + params.delta;

  SampleOutcome out{};
  out.sigma = sigma;

  if (params.variant == Variant::Thm1Capped && sigma > params.cap) {
    // Every stage up to the cap went down; the path then falls one more
    // level and stops there. Its maximum is the best of the per-stage
    // excursion maxima and of the final unrestricted fall.
    out.capped = true;
    const double bottom = -std::pow(growth, params.cap + 1);
    out.x_term = bottom;
    out.m_minus = bottom;
    double best = 0.0;
    for (int n = 0; n <= params.cap; ++n) {
      const double s = n == 0 ? 0.0 : -std::pow(growth, n - 1);
      const double l = -std::pow(growth, n);
      const double u = beta * std::pow(growth, n);
      best = std::max(best, sample_conditional_max(s, l, u, rng));
    }
    best = std::max(
        best, sample_plunge_max(-std::pow(growth, params.cap), bottom, rng));
    out.m_plus = best;
    out.m_abs = std::max(best, -bottom);
    return out;
  }

  const double level = std::pow(growth, sigma);
  const double top = beta * level;
  switch (params.variant) {
    case Variant::Thm1Uncapped:
    case Variant::Thm1Capped: {
      // Stop on the stage-sigma rise: the terminal value is the running
      // maximum, and only the last stage can push the minimum below the
      // start of that stage.
      out.x_term = top;
      out.m_plus = top;
      const double s = sigma == 0 ? 0.0 : -level / growth;
      out.m_minus = sample_conditional_min(s, -level, top, rng);
      out.m_abs = std::max(out.m_plus, -out.m_minus);
      return out;
    }
    case Variant::Thm2:
    case Variant::Thm3: {
      // After the stage-sigma rise the path falls back through the whole
      // stage and stops at the lower barrier, which is both the terminal
      // value and the minimum.
      out.x_term = -level;
      out.m_minus = -level;
      out.m_plus = sample_mplus_tail(sigma, beta, params.delta, rng);
      out.m_abs = std::max(out.m_plus, level);
      return out;
    }
  }
  throw std::logic_error("unreachable variant");
}

WalkSegmentResult walk_segment(double s, double l, double u, double dt,
                               CounterRng& rng) {
  const double h = std::sqrt(dt);
  // Integer walk; barriers land on the first lattice point at or past the
  // real barrier. The 1e-9 nudge keeps exactly representable barriers on
  // their own lattice point.
  const long long jl = static_cast<long long>(std::floor(l / h + 1e-9));
  const long long ju = static_cast<long long>(std::ceil(u / h - 1e-9));
  long long j = std::llround(s / h);
  long long jmin = j, jmax = j;
  std::uint64_t steps = 0;
  std::uint64_t word = 0;
  int bits = 0;
  while (j > jl && j < ju) {
    if (bits == 0) {
      word = rng.next_u64();
      bits = 64;
    }
    j += (word & 1u) ? 1 : -1;
    word >>= 1;
    --bits;
    ++steps;
    jmin = std::min(jmin, j);
    jmax = std::max(jmax, j);
  }
  return {j >= ju, j * h, jmin * h, jmax * h, steps};
}

WalkOutcome walk_staged(const StagedParams& params, double dt,
                        int stop_at_stage, CounterRng& rng) {
  const double growth = 1.0 + params.delta;
  WalkOutcome out{};
  double pos = 0.0;
  double lo = 0.0, hi = 0.0;
  for (int n = 0;; ++n) {
    if (n >= stop_at_stage) {
      out.sigma = stop_at_stage;
      out.truncated = true;
      break;
    }
    const auto seg = walk_segment(pos, -std::pow(growth, n),
                                  params.beta * std::pow(growth, n), dt, rng);
    lo = std::min(lo, seg.min);
    hi = std::max(hi, seg.max);
    out.steps += seg.steps;
    pos = seg.exit_value;
    if (seg.exited_up) {
      out.sigma = n;
      break;
    }
  }
  out.x_term = pos;
  out.m_minus = lo;
  out.m_plus = hi;
  return out;
}

}  // namespace maxlp
