#include "maxlp/cli.hpp"
#include "maxlp/constants.hpp"
#include "maxlp/report.hpp"

namespace maxlp::cli {

int run_constants(const ConstantsOptions& opt) {
  Table table({"schema_version", "p", "p0", "alpha", "C", "c", "frak_c",
               "residual_p0", "residual_alpha", "residual_ibp_c"});
  for (double p : opt.p_grid) {
    const ConstantsBundle b = ConstantsBundle::compute(Exponent(p));
    table.add_row({{"schema_version", kSchemaVersion},
                   {"p", b.p},
                   {"p0", b.p0},
                   {"alpha", b.alpha},
                   {"C", b.C},
                   {"c", b.c},
                   {"frak_c", b.frak_c},
                   {"residual_p0", b.residuals.at("p0")},
                   {"residual_alpha", b.residuals.at("alpha")},
                   {"residual_ibp_c", b.residuals.at("ibp_c")}});
  }
  write_report(table, opt.out.format, opt.out.out_path);
  return 0;
}

}  // namespace maxlp::cli
