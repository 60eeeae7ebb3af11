// maxlp: sharp constants, grid verification, exact simulation and sharpness
// sweeps for the three maximal inequalities. See README.md for the output
// schemas and the reproducibility contract.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxlp/cli.hpp"

namespace {

// std::stod that rejects partial parses and names the flag and token
// instead of leaking the bare "stod" exception message.
double parse_double(const std::string& token, const char* flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != token.size())
    throw std::domain_error(std::string(flag) + ": '" + token +
                            "' is not a number");
  return v;
}

int parse_int(const std::string& token, const char* flag) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(token, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != token.size())
    throw std::domain_error(std::string(flag) + ": '" + token +
                            "' is not an integer");
  return v;
}

// Grid spec: either "from:to:steps" (inclusive linear grid) or a
// comma-separated list. An empty spec is an empty grid.
std::vector<double> parse_grid(const std::string& spec, const char* flag) {
  std::vector<double> grid;
  if (spec.empty()) return grid;
  const auto c1 = spec.find(':');
  if (c1 != std::string::npos) {
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw std::domain_error(std::string(flag) +
                              ": expected from:to:steps");
    const double from = parse_double(spec.substr(0, c1), flag);
    const double to = parse_double(spec.substr(c1 + 1, c2 - c1 - 1), flag);
    const int steps = parse_int(spec.substr(c2 + 1), flag);
    if (steps < 1)
      throw std::domain_error(std::string(flag) + ": steps must be >= 1");
    for (int i = 0; i < steps; ++i)
      grid.push_back(steps == 1 ? from
                                : from + (to - from) * i / (steps - 1.0));
    return grid;
  }
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    grid.push_back(parse_double(spec.substr(pos, comma - pos), flag));
    pos = comma + 1;
  }
  return grid;
}

void add_output_flags(CLI::App* cmd, maxlp::cli::OutputOptions* out) {
  cmd->add_option("--format", out->format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", out->out_path, "Output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp-constant toolkit for maximal inequalities of "
               "supermartingales with nonnegative jumps"};
  app.require_subcommand(1);

  maxlp::cli::ConstantsOptions copt;
  std::string p_grid_spec;
  CLI::App* c = app.add_subcommand(
      "constants", "Tabulate p0, alpha, C, c and frak_c over a p-grid");
  c->add_option("--p-grid", p_grid_spec,
                "p values: from:to:steps or comma list")
      ->required();
  add_output_flags(c, &copt.out);

  maxlp::cli::VerifyOptions vopt;
  std::vector<std::string> perturb_specs;
  CLI::App* v = app.add_subcommand(
      "verify", "Check every grid clause of the three value functions");
  v->add_option("--lemma", vopt.lemma, "0, 1, 2 or all")
      ->check(CLI::IsMember({"0", "1", "2", "all"}));
  v->add_option("--p", vopt.ps, "Exponent(s); default is the built-in set");
  v->add_option("--tolerance", vopt.tolerance,
                "Allowed signed violation per clause");
  v->add_option("--perturb", perturb_specs,
                "Fault injection, name=delta (alpha, C, c, frak_c)");
  add_output_flags(v, &vopt.out);

  maxlp::cli::SimulateOptions sopt;
  std::string oracle_spec;
  CLI::App* s = app.add_subcommand(
      "simulate", "Exact Monte Carlo over one staged construction");
  s->add_option("--thm", sopt.thm, "Construction: 1, 2 or 3")->required();
  s->add_option("--p", sopt.p, "Moment exponent in (0,1)")->required();
  s->add_option("--beta", sopt.beta, "Upper-barrier ratio")->required();
  s->add_option("--delta", sopt.delta, "Stage growth rate")->required();
  s->add_option("--cap", sopt.cap, "Stage cap (first construction only)");
  s->add_option("--n", sopt.n, "Sample count (>= 10)")->required();
  s->add_option("--seed", sopt.seed, "Master seed")->required();
  s->add_option("--stream", sopt.stream, "Stream id (substream selector)");
  s->add_option("--workers", sopt.workers, "Worker threads (result-neutral)");
  s->add_flag("--stratify", sopt.stratify,
              "Stratify the stage index; adds the tail pivot for thm 2/3");
  s->add_option("--strata", sopt.strata, "Stratum count for --stratify");
  s->add_option("--oracle", oracle_spec,
                "step=<dt>: add a random-walk oracle row at that time step");
  s->add_option("--oracle-stop", sopt.oracle_stop,
                "Oracle stage bound (paths beyond come back truncated)");
  add_output_flags(s, &sopt.out);

  maxlp::cli::SharpnessOptions shopt;
  std::string sweep_spec;
  CLI::App* sh = app.add_subcommand(
      "sharpness", "Ratio-vs-beta sweep against the sharp constant");
  sh->add_option("--thm", shopt.thm, "Construction: 1, 2 or 3")->required();
  sh->add_option("--p", shopt.p, "Moment exponent in (0,1)")->required();
  sh->add_option("--beta-sweep", sweep_spec, "from:to:steps")->required();
  sh->add_option("--delta", shopt.delta, "Stage growth rate");
  sh->add_option("--K", shopt.K,
                 "Total growth budget for capped first-construction rows");
  add_output_flags(sh, &shopt.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c->parsed()) {
      copt.p_grid = parse_grid(p_grid_spec, "--p-grid");
      return maxlp::cli::run_constants(copt);
    }
    if (v->parsed()) {
      for (const std::string& spec : perturb_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
          throw std::domain_error("--perturb expects name=delta");
        vopt.perturb.emplace_back(
            spec.substr(0, eq),
            parse_double(spec.substr(eq + 1), "--perturb"));
      }
      return maxlp::cli::run_verify(vopt);
    }
    if (s->parsed()) {
      if (!oracle_spec.empty()) {
        if (oracle_spec.rfind("step=", 0) != 0)
          throw std::domain_error("--oracle expects step=<dt>");
        sopt.oracle_step = parse_double(oracle_spec.substr(5), "--oracle");
        if (!(sopt.oracle_step > 0.0))
          throw std::domain_error("--oracle step must be positive");
      }
      return maxlp::cli::run_simulate(sopt);
    }
    const auto c1 = sweep_spec.find(':');
    const auto c2 =
        c1 == std::string::npos ? std::string::npos : sweep_spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw std::domain_error("--beta-sweep expects from:to:steps");
    shopt.beta_from = parse_double(sweep_spec.substr(0, c1), "--beta-sweep");
    shopt.beta_to =
        parse_double(sweep_spec.substr(c1 + 1, c2 - c1 - 1), "--beta-sweep");
    shopt.beta_steps = parse_int(sweep_spec.substr(c2 + 1), "--beta-sweep");
    return maxlp::cli::run_sharpness(shopt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "maxlp: %s\n", e.what());
    return 2;
  }
}
