#pragma once

#include <string>
#include <vector>

#include "maxlp/constants.hpp"

namespace maxlp {

// State of a supermartingale run: current value x, running maximum y >= 0,
// running minimum z < 0. The two-variable form drops y.
struct StatePoint2 {
  double x;
  double z;
};

struct StatePoint3 {
  double x;
  double y;
  double z;
};

struct Partials2 {
  double ux;
  double uz;
};

struct Partials3 {
  double ux;
  double uy;
  double uz;
};

// Verification grid. y and |z| are geometric between scale_min and scale_max;
// x is affine between per-point bounds (z and y for the three-variable
// functions). offsets are the upward jump sizes d exercised by the jump
// clauses. tolerance is the allowed roundoff slack: a clause passes iff its
// worst signed violation stays below it.
struct GridSpec {
  double scale_min = 1e-2;
  double scale_max = 1e2;
  int x_count = 21;
  int y_count = 22;
  int z_count = 22;
  std::vector<double> offsets = {0.0, 1e-3, 1e-1, 1.0, 10.0, 1e3};
  double tolerance = 1e-12;

  // Two-variable default: 100 x 100 points in (x, z).
  static GridSpec plane();
  // Three-variable default: 21 x 22 x 22 points in (x, y, z).
  static GridSpec volume();
};

struct PropertyReport {
  std::string lemma;
  std::string clause;
  long points_checked = 0;
  // Signed: positive means the clause failed by that amount, negative means
  // it held with that margin. For derivative cross-checks this is the excess
  // of the mismatch over the finite-difference allowance.
  double worst_violation = 0.0;
  bool pass = false;
};

// Value function for the terminal-vs-infimum bound:
//   U(x,z) = alpha^{-1} (-z)^{p-1} (p x - (p-1) z),  z < 0.
double U1(StatePoint2 pt, const ConstantsBundle& b);
Partials2 U1_partials(StatePoint2 pt, const ConstantsBundle& b);

// Value function for the supremum-vs-infimum bound, piecewise in w = -y/z
// with branch boundary w = 1/p - 1. Defined for z < 0 <= y, any real x.
double U2(StatePoint3 pt, const ConstantsBundle& b);
Partials3 U2_partials(StatePoint3 pt, const ConstantsBundle& b);

// Value function for the two-sided-maximum bound (p > 1/2 only), branch
// boundary w = 1.
double U3(StatePoint3 pt, const ConstantsBundle& b);
Partials3 U3_partials(StatePoint3 pt, const ConstantsBundle& b);

// Grid verifiers. Each checks every clause the corresponding value function
// must satisfy (slopes, jump behavior, majorization, auxiliary decreasing
// tails, scaling, derivative cross-checks) and reports one record per
// clause. Violations are reported, never thrown. The bundle overloads allow
// fault injection by perturbing a constant.
std::vector<PropertyReport> verify_lemma0(const ConstantsBundle& b,
                                          const GridSpec& grid);
std::vector<PropertyReport> verify_lemma1(const ConstantsBundle& b,
                                          const GridSpec& grid);
std::vector<PropertyReport> verify_lemma2(const ConstantsBundle& b,
                                          const GridSpec& grid);

std::vector<PropertyReport> verify_lemma0(Exponent p, const GridSpec& grid);
std::vector<PropertyReport> verify_lemma1(Exponent p, const GridSpec& grid);
std::vector<PropertyReport> verify_lemma2(Exponent p, const GridSpec& grid);

}  // namespace maxlp
