#include "maxlp/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace maxlp {

namespace {

constexpr long long kBlock = 4096;

struct RawAcc {
  long long n = 0;
  long long truncated = 0;
  std::array<double, kFieldCount> sum{};
  std::array<std::array<double, kFieldCount>, kFieldCount> prod{};

  void add(const std::array<double, kFieldCount>& v, bool was_truncated) {
    ++n;
    if (was_truncated) ++truncated;
    for (int f = 0; f < kFieldCount; ++f) {
      sum[f] += v[f];
      for (int g = f; g < kFieldCount; ++g) prod[f][g] += v[f] * v[g];
    }
  }

  void merge(const RawAcc& o) {
    n += o.n;
    truncated += o.truncated;
    for (int f = 0; f < kFieldCount; ++f) {
      sum[f] += o.sum[f];
      for (int g = f; g < kFieldCount; ++g) prod[f][g] += o.prod[f][g];
    }
  }
};

// per_sample(index, fields) -> true when the sample was truncated.
template <typename PerSample>
RawAcc accumulate_blocked(long long n, int workers, PerSample per_sample) {
  if (n <= 0) throw std::domain_error("require a positive sample count");
  const long long blocks = (n + kBlock - 1) / kBlock;
  std::vector<RawAcc> slots(static_cast<std::size_t>(blocks));
  std::atomic<long long> cursor{0};

  auto work = [&]() {
    std::array<double, kFieldCount> v;
    for (;;) {
      const long long b = cursor.fetch_add(1);
      if (b >= blocks) return;
      RawAcc& acc = slots[static_cast<std::size_t>(b)];
      const long long lo = b * kBlock;
      const long long hi = std::min(n, lo + kBlock);
      for (long long i = lo; i < hi; ++i) acc.add(v, per_sample(i, v));
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  RawAcc total;
  for (const RawAcc& s : slots) total.merge(s);
  return total;
}

std::array<double, kFieldCount> outcome_fields(const SampleOutcome& out,
                                               double p) {
  return {std::pow(std::fabs(out.x_term), p), std::pow(out.m_plus, p),
          std::pow(-out.m_minus, p), std::pow(out.m_abs, p)};
}

MomentSet finalize_plain(const RawAcc& acc) {
  MomentSet m;
  m.n = acc.n;
  m.truncated = acc.truncated;
  const double n = static_cast<double>(acc.n);
  for (int f = 0; f < kFieldCount; ++f) m.mean[f] = acc.sum[f] / n;
  if (acc.n > 1) {
    for (int f = 0; f < kFieldCount; ++f)
      for (int g = f; g < kFieldCount; ++g) {
        const double cov =
            (acc.prod[f][g] - n * m.mean[f] * m.mean[g]) / (n - 1.0);
        m.mean_cov[f][g] = m.mean_cov[g][f] = cov / n;
      }
  }
  return m;
}

MomentSet mc_plain(const StagedParams& params, const McOptions& opt) {
  const double p = params.p;
  const RawAcc acc = accumulate_blocked(
      opt.n, opt.workers,
      [&](long long i, std::array<double, kFieldCount>& v) {
        CounterRng rng(opt.seed, opt.stream, static_cast<std::uint64_t>(i));
        v = outcome_fields(sample_outcome(params, rng), p);
        return false;
      });
  return finalize_plain(acc);
}

// Stratum stream ids stay distinct from each other and from the plain
// stream for any reasonable stratum count.
constexpr std::uint64_t kStratumStride = 1000003;

MomentSet mc_stratified(const StagedParams& params, const McOptions& opt) {
  if (params.variant == Variant::Thm1Capped)
    throw std::domain_error(
        "stratified stage sampling is not supported for the capped variant");
  const int K = opt.strata;
  if (K < 2) throw std::domain_error("require at least 2 strata");
  const int groups = K + 1;  // sigma = 0..K-1, then the tail sigma >= K
  if (opt.n < 2LL * groups)
    throw std::domain_error("require at least 2 samples per stratum");

  const double beta = params.beta;
  const double q = params.q();
  std::vector<double> weight(static_cast<std::size_t>(groups));
  weight[0] = 1.0 / (beta + 1.0);
  for (int k = 1; k < K; ++k)
    weight[static_cast<std::size_t>(k)] =
        beta / (beta + 1.0) * std::pow(q, k - 1) * (1.0 - q);
  weight[static_cast<std::size_t>(K)] =
      beta / (beta + 1.0) * std::pow(q, K - 1);

  // Proportional allocation, largest remainder, at least 2 per stratum.
  std::vector<long long> alloc(static_cast<std::size_t>(groups));
  std::vector<double> frac(static_cast<std::size_t>(groups));
  long long assigned = 0;
  for (int k = 0; k < groups; ++k) {
    const double t = static_cast<double>(opt.n) * weight[k];
    alloc[k] = static_cast<long long>(std::floor(t));
    frac[k] = t - static_cast<double>(alloc[k]);
    assigned += alloc[k];
  }
  while (assigned < opt.n) {
    int best = 0;
    for (int k = 1; k < groups; ++k)
      if (frac[k] > frac[best]) best = k;
    ++alloc[best];
    frac[best] = -1.0;
    ++assigned;
  }
  for (int k = 0; k < groups; ++k)
    while (alloc[k] < 2) {
      int donor = 0;
      for (int j = 1; j < groups; ++j)
        if (alloc[j] > alloc[donor]) donor = j;
      --alloc[donor];
      ++alloc[k];
    }

  const double p = params.p;
  const double log_q = std::log(q);
  // For the fall-back constructions the running-maximum draw is a Pareto
  // inverse transform whose p-th power has infinite variance when p > 1/2.
  // Subtracting the exact-mean pivot ((beta+1)a)^p (u^{-p} - 1/(1-p))
  // keeps the estimator unbiased and removes the divergent tail.
  const bool tail_pivot =
      params.variant == Variant::Thm2 || params.variant == Variant::Thm3;
  const double pareto_mean = 1.0 / (1.0 - p);
  MomentSet m;
  m.n = opt.n;
  for (int k = 0; k < groups; ++k) {
    const std::uint64_t stream =
        opt.stream + kStratumStride * static_cast<std::uint64_t>(k + 1);
    const RawAcc acc = accumulate_blocked(
        alloc[k], opt.workers,
        [&](long long i, std::array<double, kFieldCount>& v) {
          CounterRng rng(opt.seed, stream, static_cast<std::uint64_t>(i));
          int sigma = k;
          if (k == K) {
            // Conditional on sigma >= K the overshoot is geometric.
            sigma = K + static_cast<int>(
                            std::floor(std::log(rng.uniform()) / log_q));
          }
          const SampleOutcome out =
              sample_outcome_given_sigma(params, sigma, rng);
          v = outcome_fields(out, p);
          if (tail_pivot) {
            const double a = std::pow(1.0 + params.delta, sigma);
            const double u = (beta + 1.0) * a / (out.m_plus + a);
            const double pivot = std::pow((beta + 1.0) * a, p) *
                                 (std::pow(u, -p) - pareto_mean);
            v[static_cast<int>(Field::MPlus)] -= pivot;
            v[static_cast<int>(Field::MAbs)] -= pivot;
          }
          return false;
        });
    const double nk = static_cast<double>(acc.n);
    const double w = weight[static_cast<std::size_t>(k)];
    std::array<double, kFieldCount> mk;
    for (int f = 0; f < kFieldCount; ++f) {
      mk[f] = acc.sum[f] / nk;
      m.mean[f] += w * mk[f];
    }
    for (int f = 0; f < kFieldCount; ++f)
      for (int g = f; g < kFieldCount; ++g) {
        const double cov =
            (acc.prod[f][g] - nk * mk[f] * mk[g]) / (nk - 1.0);
        const double contrib = w * w * cov / nk;
        m.mean_cov[f][g] += contrib;
        if (g != f) m.mean_cov[g][f] += contrib;
      }
  }
  return m;
}

}  // namespace

double MomentSet::stderr_of(Field f) const {
  const int i = static_cast<int>(f);
  return std::sqrt(std::max(0.0, mean_cov[i][i]));
}

double ratio_estimate(const MomentSet& m, Field num, Field den) {
  return m.moment(num) / m.moment(den);
}

double ratio_stderr(const MomentSet& m, Field num, Field den) {
  const int a = static_cast<int>(num);
  const int b = static_cast<int>(den);
  const double d = m.mean[b];
  const double r = m.mean[a] / d;
  const double var =
      (m.mean_cov[a][a] + r * r * m.mean_cov[b][b] - 2.0 * r * m.mean_cov[a][b]) /
      (d * d);
  return std::sqrt(std::max(0.0, var));
}

MomentSet mc_moments(const StagedParams& params, const McOptions& opt) {
  return opt.stratify ? mc_stratified(params, opt) : mc_plain(params, opt);
}

MomentSet oracle_moments(const StagedParams& params, const OracleOptions& opt) {
  if (params.variant != Variant::Thm1Uncapped)
    throw std::domain_error(
        "the walk oracle only simulates the uncapped first-variant path");
  const double p = params.p;
  const RawAcc acc = accumulate_blocked(
      opt.n, opt.workers,
      [&](long long i, std::array<double, kFieldCount>& v) {
        CounterRng rng(opt.seed, opt.stream, static_cast<std::uint64_t>(i));
        const WalkOutcome out =
            walk_staged(params, opt.dt, opt.stop_at_stage, rng);
        v = {std::pow(std::fabs(out.x_term), p), std::pow(out.m_plus, p),
             std::pow(-out.m_minus, p),
             std::pow(std::max(out.m_plus, -out.m_minus), p)};
        return out.truncated;
      });
  return finalize_plain(acc);
}

}  // namespace maxlp
