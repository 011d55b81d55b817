#ifndef ROCOVER_OCO_H_
#define ROCOVER_OCO_H_

// Stochastic online mirror descent with the unnormalized-entropy regularizer
// over a capped simplex.
//
// The learner plays y in {y in [0,1]^d : <c, y> <= M}. Internally it works in
// the rescaled coordinates x_i = c_i y_i / M, which live in the capped simplex
//
//   V = {x : 0 <= x_i <= u_i, sum_i x_i <= 1},   u_i = min(1, c_i / M).
//
// A gain subgradient H in y-space is mapped to G_i = H_i * M / c_i, which must
// lie in [0, 1]. The update is x <- KL-projection of x * exp(eta * G) onto V.
// For any fixed comparator y* the iterates satisfy
//
//   sum_t <H_t, y_t> >= (1 - eta) sum_t <H_t, y*> - O(log d) / eta.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "rocover/sparse.h"

namespace rocover::oco {

inline constexpr double kFeasibilityEps = 1e-9;
inline constexpr double kPositivityFloor = 1e-300;
inline constexpr double kDefaultEta = 0.5;

struct CappedSimplexPoint {
  std::vector<double> coords;
  std::vector<double> caps;
};

struct GradientEstimate {
  std::vector<double> values;
};

struct OcoState {
  CappedSimplexPoint point;
  double eta = kDefaultEta;
  std::size_t dim = 0;
  double scale = 1.0;
  std::vector<double> costs;
};

// Uniform start x_i = min(1/d, u_i (1 - 1e-9)). Throws InvalidArgument on a
// zero dimension, a nonpositive cost or scale, or eta outside (0, 1].
OcoState InitState(std::size_t dim, std::span<const double> costs,
                   double scale, double eta = kDefaultEta);

// sum_i p_i ln(p_i / q_i) - p_i + q_i, with 0 ln 0 = 0.
double UnnormalizedKl(std::span<const double> p, std::span<const double> q);

// argmin of uKL(x; point) over {0 <= x_i <= caps_i, sum x_i <= 1}.
//
// The KKT point is x_i = min(caps_i, point_i * s) with s = exp(-lambda) in
// (0, 1]. Sorting the breakpoints caps_i / point_i makes the total piecewise
// linear in s, so s is found exactly in O(d log d).
CappedSimplexPoint BregmanProject(std::span<const double> point,
                                  std::span<const double> caps);

// Same projection by bisection on lambda over [0, ln(sum point) + 30] to a
// 1e-12 tolerance on the sum. Kept as an independent route for tests.
CappedSimplexPoint BregmanProjectBisection(std::span<const double> point,
                                           std::span<const double> caps);

// One gain-maximizing mirror step. Throws InvalidArgument if some
// grad_i * scale / costs_i falls outside [0, 1].
OcoState Step(OcoState state, const GradientEstimate& grad);

// In-place step from a sparse gradient; coordinates not listed are zero.
void StepInPlace(OcoState& state, const SparseVector& grad);

// y_i = coords_i * scale / costs_i, clamped to [0, 1].
std::vector<double> Play(const OcoState& state);

// coords within [floor, cap] and the sum within 1 + kFeasibilityEps.
bool IsFeasible(const CappedSimplexPoint& point);

// Writes "t,i,coord" rows for every coordinate.
void WriteIterateRows(std::ostream& out, std::size_t t, const OcoState& state);

}  // namespace rocover::oco

#endif  // ROCOVER_OCO_H_
