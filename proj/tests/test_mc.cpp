#include "doctest.h"

#include "maxlp/mc.hpp"
#include "maxlp/sharpness.hpp"

#include <cmath>
#include <stdexcept>

using maxlp::Exponent;
using maxlp::Field;
using maxlp::McOptions;
using maxlp::MomentSet;
using maxlp::OracleOptions;
using maxlp::StagedParams;
using maxlp::Variant;

namespace {

bool identical(const MomentSet& a, const MomentSet& b) {
    if (a.n != b.n || a.truncated != b.truncated) return false;
    for (int i = 0; i < maxlp::kFieldCount; ++i) {
        if (a.mean[i] != b.mean[i]) return false;
        for (int j = 0; j < maxlp::kFieldCount; ++j)
            if (a.mean_cov[i][j] != b.mean_cov[i][j]) return false;
    }
    return true;
}

double zscore(const MomentSet& m, Field f, double want) {
    return (m.moment(f) - want) / m.stderr_of(f);
}

} // namespace

TEST_CASE("estimates are identical for any worker count") {
    auto params = StagedParams::make(Variant::Thm2, Exponent(0.3), 0.5, 0.5);

    McOptions base;
    base.n = 40000;
    base.seed = 5;
    auto one = mc_moments(params, base);
    for (int w : {2, 4, 8}) {
        CAPTURE(w);
        McOptions opt = base;
        opt.workers = w;
        CHECK(identical(one, mc_moments(params, opt)));
    }

    McOptions strat = base;
    strat.stratify = true;
    auto sone = mc_moments(params, strat);
    for (int w : {4, 8}) {
        CAPTURE(w);
        McOptions opt = strat;
        opt.workers = w;
        CHECK(identical(sone, mc_moments(params, opt)));
    }

    auto wparams = StagedParams::make(Variant::Thm1Uncapped, Exponent(0.15), 1.0, 0.25);
    OracleOptions wopt;
    wopt.n = 400;
    wopt.seed = 9;
    wopt.dt = 1e-3;
    wopt.stop_at_stage = 4;
    auto wone = oracle_moments(wparams, wopt);
    OracleOptions wmulti = wopt;
    wmulti.workers = 4;
    CHECK(identical(wone, oracle_moments(wparams, wmulti)));

    // And a rerun reproduces the run bit for bit.
    CHECK(identical(one, mc_moments(params, base)));
}

TEST_CASE("plain estimates match the exact laws") {
    McOptions opt;
    opt.n = 200000;
    opt.seed = 42;

    {
        auto params = StagedParams::make(Variant::Thm1Uncapped, Exponent(0.15), 1.0, 0.25);
        auto m = mc_moments(params, opt);
        auto law = maxlp::thm1_uncapped_norms(1.0, 0.25, Exponent(0.15));
        CHECK(std::fabs(zscore(m, Field::AbsTerminal, law.x_pow)) < 4.0);
        // The infimum bound is a true upper bound on the sampled moment.
        CHECK(m.moment(Field::MMinusNeg) <
              law.m_minus_pow_bound + 4.0 * m.stderr_of(Field::MMinusNeg));
    }
    {
        auto params = StagedParams::make(Variant::Thm2, Exponent(0.3), 0.5, 0.5);
        auto m = mc_moments(params, opt);
        auto law = maxlp::thm2_law_moments(0.5, 0.5, Exponent(0.3));
        CHECK(std::fabs(zscore(m, Field::MMinusNeg, law.m_minus_pow)) < 4.0);
        CHECK(std::fabs(zscore(m, Field::MPlus, law.m_plus_pow)) < 4.0);

        double r = maxlp::ratio_estimate(m, Field::MPlus, Field::MMinusNeg);
        double se = maxlp::ratio_stderr(m, Field::MPlus, Field::MMinusNeg);
        CHECK(se > 0.0);
        CHECK(std::fabs(r - law.m_plus_pow / law.m_minus_pow) < 4.0 * se);
    }
}

TEST_CASE("stratified estimates match the exact laws") {
    // At p = 0.3 every field has finite variance, so the 4-sigma band is
    // honest for both the plain and the stratified estimator.
    auto params = StagedParams::make(Variant::Thm2, Exponent(0.3), 0.5, 0.5);
    auto law = maxlp::thm2_law_moments(0.5, 0.5, Exponent(0.3));

    McOptions opt;
    opt.n = 200000;
    opt.seed = 17;
    opt.stratify = true;
    opt.strata = 8;
    auto m = mc_moments(params, opt);
    CHECK(m.n == opt.n);
    CHECK(std::fabs(zscore(m, Field::MMinusNeg, law.m_minus_pow)) < 4.0);
    CHECK(std::fabs(zscore(m, Field::MPlus, law.m_plus_pow)) < 4.0);

    // The running-maximum pivot kicks in above p = 1/2 where the raw power
    // has infinite variance; the estimator stays centered on the law.
    auto heavy = StagedParams::make(Variant::Thm3, Exponent(0.75), 0.02, 15.67);
    auto heavy_law = maxlp::thm3_law_moments(0.02, 15.67, Exponent(0.75));
    McOptions hopt;
    hopt.n = 100000;
    hopt.seed = 3;
    hopt.stratify = true;
    hopt.strata = 12;
    auto hm = mc_moments(heavy, hopt);
    CHECK(std::fabs(zscore(hm, Field::MAbs, heavy_law.m_abs_pow)) < 4.0);
}

TEST_CASE("covariance output is well formed") {
    auto params = StagedParams::make(Variant::Thm2, Exponent(0.5), 0.9, 0.01);
    McOptions opt;
    opt.n = 20000;
    opt.seed = 1;
    auto m = mc_moments(params, opt);
    for (int i = 0; i < maxlp::kFieldCount; ++i) {
        CHECK(m.mean_cov[i][i] >= 0.0);
        CHECK(m.stderr_of(static_cast<Field>(i)) ==
              doctest::Approx(std::sqrt(m.mean_cov[i][i])));
        for (int j = 0; j < i; ++j)
            CHECK(m.mean_cov[i][j] == m.mean_cov[j][i]);
    }
    // The fall-back construction pins (-M-)^p = (1+delta)^(p sigma) >= 1.
    CHECK(m.moment(Field::MMinusNeg) >= 1.0);
    CHECK(m.moment(Field::MAbs) >= m.moment(Field::MPlus));
}

TEST_CASE("walk oracle counts truncated paths") {
    auto params = StagedParams::make(Variant::Thm1Uncapped, Exponent(0.15), 1.0, 1.0);
    OracleOptions opt;
    opt.n = 4000;
    opt.seed = 13;
    opt.dt = 1e-2;
    opt.stop_at_stage = 2;
    auto m = oracle_moments(params, opt);
    CHECK(m.n == opt.n);
    // P(sigma >= 2) = (beta/(beta+1)) q = 3/8 at beta = delta = 1.
    double want = 3.0 / 8.0;
    double se = std::sqrt(want * (1.0 - want) / opt.n);
    CHECK(std::fabs(double(m.truncated) / opt.n - want) < 4.0 * se);
    CHECK(m.moment(Field::AbsTerminal) > 0.0);
}

TEST_CASE("option validation") {
    auto params = StagedParams::make(Variant::Thm2, Exponent(0.5), 0.9, 0.01);
    McOptions opt;

    opt.n = 0;
    CHECK_THROWS_AS(mc_moments(params, opt), std::domain_error);

    opt.n = 1000;
    opt.stratify = true;
    opt.strata = 1;
    CHECK_THROWS_AS(mc_moments(params, opt), std::domain_error);

    opt.strata = 6;
    opt.n = 8;
    CHECK_THROWS_AS(mc_moments(params, opt), std::domain_error);

    auto capped = StagedParams::make(Variant::Thm1Capped, Exponent(0.5), 2.0, 0.5, 4);
    McOptions copt;
    copt.stratify = true;
    CHECK_THROWS_AS(mc_moments(capped, copt), std::domain_error);

    OracleOptions wopt;
    CHECK_THROWS_AS(oracle_moments(params, wopt), std::domain_error);
}
