#include <cmath>
#include <stdexcept>

#include "maxlp/cli.hpp"
#include "maxlp/mc.hpp"
#include "maxlp/report.hpp"
#include "maxlp/sharpness.hpp"

namespace maxlp::cli {

namespace {

Variant pick_variant(int thm, int cap) {
  switch (thm) {
    case 1:
      return cap >= 0 ? Variant::Thm1Capped : Variant::Thm1Uncapped;
    case 2:
      return Variant::Thm2;
    case 3:
      return Variant::Thm3;
    default:
      throw std::domain_error("--thm must be 1, 2 or 3");
  }
}

Field ratio_numerator(int thm) {
  if (thm == 1) return Field::AbsTerminal;
  if (thm == 2) return Field::MPlus;
  return Field::MAbs;
}

double sharp_constant_pow(int thm, Exponent pe) {
  const double p = pe.value();
  if (thm == 1) return std::pow(constant_C(pe), p);
  if (thm == 2) return std::pow(constant_c(pe), p);
  return std::pow(constant_frak_c(pe), p);
}

}  // namespace

int run_simulate(const SimulateOptions& opt) {
  if (opt.n < 10) throw std::domain_error("require n >= 10 samples");
  Exponent pe(opt.p);
  const StagedParams params =
      StagedParams::make(pick_variant(opt.thm, opt.cap), pe, opt.beta,
                         opt.delta, opt.cap);

  Table table({"schema_version", "thm", "p", "beta", "delta", "cap", "n",
               "seed", "stream", "stratify", "strata", "mode", "step",
               "stop_at_stage", "truncated_share", "abs_terminal_pow",
               "abs_terminal_stderr", "m_plus_pow", "m_plus_stderr",
               "m_minus_neg_pow", "m_minus_neg_stderr", "m_abs_pow",
               "m_abs_stderr", "ratio", "ratio_stderr",
               "sharp_constant_pow"});

  const Field num = ratio_numerator(opt.thm);
  const double sharp = sharp_constant_pow(opt.thm, pe);

  auto emit = [&](const MomentSet& m, const std::string& mode,
                  nlohmann::ordered_json step,
                  nlohmann::ordered_json stop_at_stage,
                  nlohmann::ordered_json truncated_share) {
    table.add_row(
        {{"schema_version", kSchemaVersion},
         {"thm", opt.thm},
         {"p", opt.p},
         {"beta", opt.beta},
         {"delta", opt.delta},
         {"cap", opt.cap},
         {"n", m.n},
         {"seed", opt.seed},
         {"stream", opt.stream},
         {"stratify", opt.stratify},
         {"strata", opt.stratify ? nlohmann::ordered_json(opt.strata)
                                 : nlohmann::ordered_json()},
         {"mode", mode},
         {"step", step},
         {"stop_at_stage", stop_at_stage},
         {"truncated_share", truncated_share},
         {"abs_terminal_pow", m.moment(Field::AbsTerminal)},
         {"abs_terminal_stderr", m.stderr_of(Field::AbsTerminal)},
         {"m_plus_pow", m.moment(Field::MPlus)},
         {"m_plus_stderr", m.stderr_of(Field::MPlus)},
         {"m_minus_neg_pow", m.moment(Field::MMinusNeg)},
         {"m_minus_neg_stderr", m.stderr_of(Field::MMinusNeg)},
         {"m_abs_pow", m.moment(Field::MAbs)},
         {"m_abs_stderr", m.stderr_of(Field::MAbs)},
         {"ratio", ratio_estimate(m, num, Field::MMinusNeg)},
         {"ratio_stderr", ratio_stderr(m, num, Field::MMinusNeg)},
         {"sharp_constant_pow", sharp}});
  };

  McOptions mc;
  mc.n = opt.n;
  mc.seed = opt.seed;
  mc.stream = opt.stream;
  mc.workers = opt.workers;
  mc.stratify = opt.stratify;
  mc.strata = opt.strata;
  emit(mc_moments(params, mc), "exact", nullptr, nullptr, nullptr);

  if (opt.oracle_step > 0.0) {
    OracleOptions oc;
    oc.n = opt.n;
    oc.seed = opt.seed;
    oc.stream = opt.stream;
    oc.workers = opt.workers;
    oc.dt = opt.oracle_step;
    oc.stop_at_stage = opt.oracle_stop;
    const MomentSet m = oracle_moments(params, oc);
    emit(m, "walk", opt.oracle_step, opt.oracle_stop,
         static_cast<double>(m.truncated) / static_cast<double>(m.n));
  }

  write_report(table, opt.out.format, opt.out.out_path);
  return 0;
}

}  // namespace maxlp::cli
