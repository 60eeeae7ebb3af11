#pragma once

// Monte Carlo moment estimation over the staged constructions. Sampling is
// partitioned into fixed-size blocks of consecutive sample indices; workers
// claim blocks through an atomic cursor, each block is accumulated
// sequentially into its own slot, and slots are reduced in block order.
// Together with the counter-based per-sample RNG this makes every estimate
// byte-identical for any worker count.

#include <array>
#include <cstdint>

#include "maxlp/simulator.hpp"

namespace maxlp {

// Per-sample statistics, each raised to the p-th power.
enum class Field : int {
  AbsTerminal = 0,  // |X|^p
  MPlus = 1,        // (M+)^p
  MMinusNeg = 2,    // (-M-)^p
  MAbs = 3,         // max(M+, -M-)^p
};
inline constexpr int kFieldCount = 4;

struct MomentSet {
  long long n = 0;
  long long truncated = 0;  // walk-oracle paths cut at the stage bound
  std::array<double, kFieldCount> mean{};
  // Covariance matrix of the vector of means (sample covariance / n for a
  // plain run; the stratified analogue otherwise).
  std::array<std::array<double, kFieldCount>, kFieldCount> mean_cov{};

  double moment(Field f) const { return mean[static_cast<int>(f)]; }
  double stderr_of(Field f) const;
};

double ratio_estimate(const MomentSet& m, Field num, Field den);
// Delta-method standard error of mean[num]/mean[den].
double ratio_stderr(const MomentSet& m, Field num, Field den);

struct McOptions {
  long long n = 100000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  int workers = 1;
  // Stratify over the stage index: strata sigma = 0..strata-1 plus one tail
  // stratum sigma >= strata, sampled proportionally to their probabilities.
  // For the fall-back constructions this also subtracts an exact-mean pivot
  // from the running-maximum fields, whose raw p-th powers have infinite
  // variance for p > 1/2. Not available for the capped variant.
  bool stratify = false;
  int strata = 6;
};

MomentSet mc_moments(const StagedParams& params, const McOptions& opt);

// Literal random-walk oracle (uncapped first construction only). Paths that
// survive stop_at_stage stages are truncated and still contribute their
// prefix extrema; the truncated count reports how many.
struct OracleOptions {
  long long n = 10000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  int workers = 1;
  double dt = 1e-4;
  int stop_at_stage = 8;
};

MomentSet oracle_moments(const StagedParams& params, const OracleOptions& opt);

}  // namespace maxlp
