#include <stdexcept>

#include "maxlp/cli.hpp"
#include "maxlp/report.hpp"
#include "maxlp/sharpness.hpp"

namespace maxlp::cli {

int run_sharpness(const SharpnessOptions& opt) {
  if (opt.thm < 1 || opt.thm > 3)
    throw std::domain_error("--thm must be 1, 2 or 3");
  if (opt.beta_steps < 1)
    throw std::domain_error("--beta-sweep needs at least 1 step");
  if (!(opt.beta_from > 0.0) || !(opt.beta_to >= opt.beta_from))
    throw std::domain_error(
        "--beta-sweep requires 0 < from <= to (supply from:to:steps)");

  Exponent pe(opt.p);
  Table table({"schema_version", "thm", "p", "beta", "delta", "K",
               "numerator", "denominator", "ratio", "limit_tag",
               "sharp_constant_pow"});

  for (int i = 0; i < opt.beta_steps; ++i) {
    const double beta =
        opt.beta_steps == 1
            ? opt.beta_from
            : opt.beta_from + (opt.beta_to - opt.beta_from) *
                                  static_cast<double>(i) /
                                  static_cast<double>(opt.beta_steps - 1);
    RatioCurvePoint pt;
    switch (opt.thm) {
      case 1:
        pt = thm1_ratio_point(pe, beta, opt.delta, opt.K);
        break;
      case 2:
        pt = thm2_ratio_point(pe, beta, opt.delta);
        break;
      default:
        pt = thm3_ratio_point(pe, beta, opt.delta);
        break;
    }
    table.add_row({{"schema_version", kSchemaVersion},
                   {"thm", opt.thm},
                   {"p", opt.p},
                   {"beta", pt.beta},
                   {"delta", pt.delta},
                   {"K", pt.K ? nlohmann::ordered_json(*pt.K)
                              : nlohmann::ordered_json()},
                   {"numerator", pt.numerator},
                   {"denominator", pt.denominator},
                   {"ratio", pt.ratio},
                   {"limit_tag", pt.limit_tag},
                   {"sharp_constant_pow", pt.target}});
  }

  write_report(table, opt.out.format, opt.out.out_path);
  return 0;
}

}  // namespace maxlp::cli
