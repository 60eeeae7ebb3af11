#pragma once

// Subcommand entry points. The binary in tools/ only parses flags into these
// option structs; tests drive the same functions directly. Every run emits
// one table (CSV or JSON) and returns the process exit code:
//   0  success
//   1  a verification clause failed
//   2  usage or domain error (reported on stderr by the caller)

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace maxlp::cli {

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;  // empty -> stdout
};

struct ConstantsOptions {
  std::vector<double> p_grid;
  OutputOptions out;
};
int run_constants(const ConstantsOptions& opt);

struct VerifyOptions {
  std::string lemma = "all";  // "0", "1", "2" or "all"
  std::vector<double> ps;     // empty -> per-lemma default exponents
  double tolerance = 1e-12;
  // Additive perturbations of named bundle constants (alpha, C, c, frak_c),
  // for fault-injection runs that must exit 1.
  std::vector<std::pair<std::string, double>> perturb;
  OutputOptions out;
};
int run_verify(const VerifyOptions& opt);

struct SimulateOptions {
  int thm = 2;
  double p = 0.5;
  double beta = 0.9;
  double delta = 0.01;
  int cap = -1;  // >= 0 selects the capped first construction
  long long n = 100000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  int workers = 1;
  bool stratify = false;
  int strata = 6;
  double oracle_step = 0.0;  // > 0 adds a row from the random-walk oracle
  int oracle_stop = 8;
  OutputOptions out;
};
int run_simulate(const SimulateOptions& opt);

struct SharpnessOptions {
  int thm = 2;
  double p = 0.5;
  double beta_from = 0.0;
  double beta_to = 0.0;
  int beta_steps = 0;
  double delta = 1e-6;
  double K = 100.0;
  OutputOptions out;
};
int run_sharpness(const SharpnessOptions& opt);

}  // namespace maxlp::cli
