#include <stdexcept>

#include "maxlp/cli.hpp"
#include "maxlp/report.hpp"
#include "maxlp/special_functions.hpp"

namespace maxlp::cli {

namespace {

void apply_perturbations(
    ConstantsBundle& b,
    const std::vector<std::pair<std::string, double>>& perturb) {
  for (const auto& [name, delta] : perturb) {
    if (name == "alpha")
      b.alpha += delta;
    else if (name == "C")
      b.C += delta;
    else if (name == "c")
      b.c += delta;
    else if (name == "frak_c")
      b.frak_c += delta;
    else
      throw std::domain_error("unknown constant '" + name +
                              "' (perturbable: alpha, C, c, frak_c)");
  }
}

}  // namespace

int run_verify(const VerifyOptions& opt) {
  const bool do0 = opt.lemma == "0" || opt.lemma == "all";
  const bool do1 = opt.lemma == "1" || opt.lemma == "all";
  const bool do2 = opt.lemma == "2" || opt.lemma == "all";
  if (!do0 && !do1 && !do2)
    throw std::domain_error("unknown lemma selection '" + opt.lemma +
                            "' (expected 0, 1, 2 or all)");

  const std::vector<double> defaults = {0.05, 0.15, 0.3, 0.5, 0.75, 0.9};
  std::vector<double> ps = opt.ps.empty() ? defaults : opt.ps;

  GridSpec plane = GridSpec::plane();
  GridSpec volume = GridSpec::volume();
  plane.tolerance = volume.tolerance = opt.tolerance;

  Table table({"schema_version", "lemma", "p", "clause", "points_checked",
               "worst_violation", "pass", "tolerance"});
  bool all_pass = true;
  auto emit = [&](const std::vector<PropertyReport>& reports, double p) {
    for (const PropertyReport& r : reports) {
      all_pass = all_pass && r.pass;
      table.add_row({{"schema_version", kSchemaVersion},
                     {"lemma", r.lemma},
                     {"p", p},
                     {"clause", r.clause},
                     {"points_checked", r.points_checked},
                     {"worst_violation", r.worst_violation},
                     {"pass", r.pass},
                     {"tolerance", opt.tolerance}});
    }
  };

  for (double p : ps) {
    Exponent pe(p);
    ConstantsBundle b = ConstantsBundle::compute(pe);
    apply_perturbations(b, opt.perturb);
    if (do0) emit(verify_lemma0(b, plane), p);
    if (do1) emit(verify_lemma1(b, volume), p);
    if (do2) {
      // The two-sided function only exists for p > 1/2. Skip smaller p in
      // a combined run; reject them when lemma 2 was selected explicitly.
      if (p > 0.5)
        emit(verify_lemma2(b, volume), p);
      else if (opt.lemma == "2")
        throw std::domain_error(
            "lemma 2 requires p > 1/2; got p = " + std::to_string(p));
    }
  }

  write_report(table, opt.out.format, opt.out.out_path);
  return all_pass ? 0 : 1;
}

}  // namespace maxlp::cli
