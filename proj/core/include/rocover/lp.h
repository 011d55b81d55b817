#ifndef ROCOVER_LP_H_
#define ROCOVER_LP_H_

// First-order solver for box-bounded covering-type LPs
//
//   min c.x  s.t.  G x >= h,  0 <= x <= u,
//
// by preconditioned primal-dual hybrid gradient with adaptive restarts.
// Every reported value is bracketed: the lower bound is the Lagrangian dual
// value of a nonnegative multiplier vector, and the upper bound is the cost
// of a primal point that a caller-supplied repair made exactly feasible.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rocover/sparse.h"

namespace rocover::lp {

struct Problem {
  std::size_t num_vars = 0;
  std::vector<double> costs;   // c >= 0
  std::vector<double> upper;   // u > 0, finite
  std::vector<SparseVector> rows;
  std::vector<double> rhs;
};

// Moves a point in the box to a feasible point of the LP, staying in the box.
using Repair = std::function<void(std::vector<double>&)>;

struct Options {
  double eps = 0.01;  // stop once upper <= (1 + eps) * lower
  std::size_t max_iters = 400000;
  std::size_t check_every = 64;
};

struct Solution {
  double value = 0.0;        // cost of `x`, an upper bound on the optimum
  double lower_bound = 0.0;  // certified
  std::vector<double> x;     // feasible
  std::vector<double> duals;
  std::size_t iterations = 0;
  bool converged = false;

  double gap() const;  // value / lower_bound - 1 (0 when both vanish)
};

// L(y) = h.y + sum_j min(0, (c - G^T y)_j) u_j for y >= 0 (clamped).
double LagrangianBound(const Problem& problem, std::span<const double> y);

double Objective(const Problem& problem, std::span<const double> x);

// Largest violation max_i (h_i - G_i x), or 0 when feasible.
double MaxViolation(const Problem& problem, std::span<const double> x);

// Repair for rows with nonnegative coefficients: each deficient row raises
// its variables in increasing c_j / G_ij order. Throws InfeasibleInstance if
// the box cannot satisfy some row.
void RepairCovering(const Problem& problem, std::vector<double>& x);

// `warm`, when given, seeds the primal and dual iterates; rows added since
// it was computed start with multiplier 0.
Solution Solve(const Problem& problem, const Repair& repair,
               const Options& options = {}, const Solution* warm = nullptr);

}  // namespace rocover::lp

#endif  // ROCOVER_LP_H_
