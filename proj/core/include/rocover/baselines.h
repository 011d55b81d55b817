#ifndef ROCOVER_BASELINES_H_
#define ROCOVER_BASELINES_H_

// Offline baselines over an element subset: exact integral optimum by
// branch and bound, the fractional LP optimum to a certified (1 + eps)
// factor, and greedy cover. Validators for two probabilistic inequalities
// used by the analysis live here too.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rocover/lp.h"
#include "rocover/problems.h"
#include "rocover/rng.h"

namespace rocover {

enum class BaselineKind { kIntegral, kLp, kGreedy };

std::string_view BaselineKindName(BaselineKind kind);

struct BaselineResult {
  BaselineKind kind = BaselineKind::kIntegral;
  double value = 0.0;
  // Integral: copy count per resource (facility open flags for nmfl).
  // Fractional: the LP point in the layout of FractionalLp().
  std::vector<double> witness;
  bool exact = true;
  double eps = 0.0;          // certified relative gap when inexact
  double lower_bound = 0.0;  // equals value when exact
  std::vector<double> duals;  // LP multipliers, reusable as a warm start
};

struct SearchLimits {
  std::size_t max_resources = 25;   // set cover, multicover, cip columns
  std::size_t max_facilities = 20;
  std::uint64_t max_nodes = 20'000'000;
};

// Exact optimum restricted to `subset`. Throws SizeCapExceeded past the
// limits; the message suggests the lp estimate mode. cip solves Ax >= 1.
BaselineResult OptIntegral(const SetSystem& sys,
                           std::span<const ElementId> subset,
                           const SearchLimits& limits = {});
BaselineResult OptIntegral(const MulticoverInstance& inst,
                           std::span<const ElementId> subset,
                           const SearchLimits& limits = {});
BaselineResult OptIntegral(const CipInstance& inst,
                           std::span<const ElementId> subset,
                           const SearchLimits& limits = {});
BaselineResult OptIntegral(const FacilityInstance& inst,
                           std::span<const ElementId> subset,
                           const SearchLimits& limits = {});

// The LP relaxation of each problem over `subset`, with finite boxes that do
// not change its optimum:
//   set cover / multicover  min c.x, sum_{S ni e} x_S >= b_e, 0 <= x <= 1
//   cip                     min c.x, A_e x >= 1, 0 <= x_j <= 1 / min_e A_ej
//   nmfl                    min c.y + d.x, sum_i x_ie >= 1, y_i >= x_ie,
//                           0 <= x, y <= 1
// nmfl variables are y_0..y_{F-1} followed, per client of `subset` in order,
// by x_ie for each facility i at finite distance. Rows of a client are
// contiguous, so growing the subset only appends rows and variables.
struct LpModel {
  lp::Problem problem;
  std::size_t num_facilities = 0;  // nmfl only
  // nmfl only: per client of the subset, (variable, distance) pairs.
  std::vector<std::vector<std::pair<std::size_t, double>>> client_vars;
};

LpModel FractionalLp(const SetSystem& sys, std::span<const ElementId> subset);
LpModel FractionalLp(const MulticoverInstance& inst,
                     std::span<const ElementId> subset);
LpModel FractionalLp(const CipInstance& inst,
                     std::span<const ElementId> subset);
LpModel FractionalLp(const FacilityInstance& inst,
                     std::span<const ElementId> subset);

// Makes a box point feasible for the model.
void RepairLp(const LpModel& model, std::vector<double>& x);

// Solves a model; `warm` may come from a smaller prefix of the same subset.
BaselineResult SolveLp(const LpModel& model, double eps,
                       const BaselineResult* warm = nullptr);

// Throws InvalidArgument unless eps lies in (0, 0.5].
void CheckLpEps(double eps);

template <typename Instance>
BaselineResult OptFractional(const Instance& inst,
                             std::span<const ElementId> subset,
                             double eps = 0.01,
                             const BaselineResult* warm = nullptr) {
  CheckLpEps(eps);
  return SolveLp(FractionalLp(inst, subset), eps, warm);
}

// Cost-effectiveness greedy: repeatedly buys the set minimizing cost per
// newly satisfied unit of demand (ties: lowest index).
BaselineResult GreedyCover(const SetSystem& sys,
                           std::span<const ElementId> subset);
BaselineResult GreedyCover(const MulticoverInstance& inst,
                           std::span<const ElementId> subset);

// 1 - prod(1 - a_k) - (1 - 1/e) min(1, sum a_k).
double ClaimB1Slack(std::span<const double> a);

struct ClaimB1Report {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;
  std::vector<double> worst;  // the vector attaining min_slack
};

// Draws vectors of length 1..20 with entries uniform in [0, 1].
ClaimB1Report ValidateClaimB1(std::size_t samples, SplitMix64& rng);

struct FactB2Config {
  std::vector<double> pi;
  std::vector<double> lambda;
  double cap = 1.0;
};

struct FactB2Estimate {
  double mean = 0.0;             // Monte Carlo E[min(Lambda, C)]
  double std_error = 0.0;
  double expected_lambda = 0.0;  // exact E[Lambda]
  double bound = 0.0;            // min(E[Lambda], C) / 168
  bool holds() const { return mean + 3.0 * std_error >= bound; }
};

FactB2Estimate EstimateFactB2(const FactB2Config& config,
                              std::size_t mc_samples, SplitMix64& rng);

struct FactB2Report {
  std::size_t configs = 0;
  std::size_t violations = 0;
  double min_ratio = 0.0;  // smallest (mean + 3 SE) / bound
  FactB2Config worst;
};

// Configurations: 1..20 terms, pi and lambda uniform in [0, 1], C uniform
// in [1 / (e - 1), 3].
FactB2Report ValidateFactB2(std::size_t configs, std::size_t mc_samples,
                            SplitMix64& rng);

}  // namespace rocover

#endif  // ROCOVER_BASELINES_H_
