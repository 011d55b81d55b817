#ifndef ROCOVER_VERIFY_H_
#define ROCOVER_VERIFY_H_

// Property suites behind `rocover verify`. Each suite draws its cases from
// DeriveSeed(seed, kValidator, suite, case) and scales its case counts by
// `budget` (1.0 is the full size).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rocover {

struct VerifyOptions {
  double budget = 1.0;
  std::uint64_t seed = 0;
};

struct SuiteReport {
  std::string name;
  bool passed = true;
  std::vector<std::string> stats;  // "key=value" entries
  std::string failure;             // first failing property, if any
  std::optional<std::size_t> failing_case;
  double seconds = 0.0;
};

// regret, projection, unbiasedness, gradients, potential, appendix-b,
// roundtrip, feasibility, estimate.
const std::vector<std::string_view>& SuiteNames();

// `selector` is a suite name or "all". Throws InvalidArgument otherwise.
std::vector<SuiteReport> RunSuites(std::string_view selector,
                                   const VerifyOptions& options);

// Multiplicative-additive regret of the learner on linear gains: 100
// sequences, d in [2, 64], T = 10^4, eta = 1/2, slack 40 ln d against the
// exact linear maximizer over the capped simplex.
SuiteReport VerifyRegret(const VerifyOptions& options);

// 1000 projections (d = 2, 3) against every point of the 0.01 grid of the
// feasible set; the bisection route must agree within 1e-9.
SuiteReport VerifyProjection(const VerifyOptions& options);

// Per problem, 200 fuzzed states with 10^4 sampled future elements each:
// the empirical mean gradient is within 4 standard errors of the exact mean
// on at least 99% of informative coordinates.
SuiteReport VerifyUnbiasedness(const VerifyOptions& options);

// Per problem, 10^5 fuzzed evaluations: gradient entries in
// [0, c_S / est + 1e-12], aug / alpha <= kappa <= aug, kappa monotone.
SuiteReport VerifyGradients(const VerifyOptions& options);

// 100 runs with per-element kappa recorded: every kappa_f is non-increasing
// over time and so is the potential. Also reports the ln(Phi) trend of set
// cover runs at est = OPT.
SuiteReport VerifyPotential(const VerifyOptions& options);

// Claim B.1 on 10^4 vectors; Fact B.2 on 10^3 configurations of 10^5
// samples each.
SuiteReport VerifyAppendixB(const VerifyOptions& options);

// parse(serialize(x)) == x and serialize is a fixed point, all kinds.
SuiteReport VerifyRoundTrip(const VerifyOptions& options);

// 1000 runs over all four problems (n, m <= 100): every element served,
// cip finalized covers satisfy Ax >= 1.
SuiteReport VerifyFeasibility(const VerifyOptions& options);

// 200 integral-mode runs: OPT <= final est <= 2 OPT.
SuiteReport VerifyEstimate(const VerifyOptions& options);

}  // namespace rocover

#endif  // ROCOVER_VERIFY_H_
