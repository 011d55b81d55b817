#include "rocover/lp.h"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "rocover/baselines.h"
#include "rocover/errors.h"
#include "rocover/rng.h"

namespace rocover {
namespace {

using testing::AllElements;

// Independent oracle: min c.x over the 3-variable triangle LP on a 0.005 grid.
double TriangleGridLp() {
  double best = 1e9;
  for (int a = 0; a <= 200; ++a) {
    for (int b = 0; b <= 200; ++b) {
      for (int c = 0; c <= 200; ++c) {
        const double x0 = 0.005 * a, x1 = 0.005 * b, x2 = 0.005 * c;
        // Edges: e0 in {S0, S1}, e1 in {S1, S2}, e2 in {S0, S2}.
        if (x0 + x1 < 1.0 - 1e-12 || x1 + x2 < 1.0 - 1e-12 ||
            x0 + x2 < 1.0 - 1e-12) {
          continue;
        }
        best = std::min(best, x0 + x1 + x2);
      }
    }
  }
  return best;
}

TEST(FractionalLp, TriangleValue) {
  const SetSystem sys = testing::Triangle();
  const double oracle = TriangleGridLp();
  ASSERT_NEAR(oracle, 1.5, 1e-12);
  const BaselineResult r = OptFractional(sys, AllElements(3), 0.01);
  EXPECT_NEAR(r.value, 1.5, 0.015);
  EXPECT_LE(r.lower_bound, 1.5 + 1e-9);
  EXPECT_GE(r.value, 1.5 - 1e-9);
  EXPECT_LE(r.value, (1.0 + 0.01) * r.lower_bound + 1e-12);
}

TEST(FractionalLp, SingleElementIsCheapestSet) {
  const SetSystem sys = MakeSetSystem(1, {{0}, {0}}, {3.0, 5.0});
  const std::vector<ElementId> all = {0};
  EXPECT_NEAR(OptFractional(sys, all).value, 3.0, 0.03);
}

TEST(FractionalLp, CipRow) {
  // Vertex enumeration of min 2a + 3b s.t. 0.5a + b >= 1, a in [0, 2],
  // b in [0, 1]: vertices (0, 1) -> 3 and (2, 0) -> 4.
  const CipInstance inst = MakeCip(2, {2.0, 3.0}, {{{0, 0.5}, {1, 1.0}}});
  const double vertex = std::min(2.0 * 0.0 + 3.0 * 1.0, 2.0 * 2.0 + 3.0 * 0.0);
  ASSERT_DOUBLE_EQ(vertex, 3.0);
  EXPECT_NEAR(OptFractional(inst, AllElements(1)).value, 3.0, 0.03);
}

TEST(FractionalLp, EmptySubsetIsZero) {
  const SetSystem sys = testing::Triangle();
  const BaselineResult r = OptFractional(sys, std::vector<ElementId>{});
  EXPECT_DOUBLE_EQ(r.value, 0.0);
}

TEST(FractionalLp, RejectsBadEps) {
  const SetSystem sys = testing::Triangle();
  EXPECT_THROW(OptFractional(sys, AllElements(3), 0.0), Error);
  EXPECT_THROW(OptFractional(sys, AllElements(3), 0.9), Error);
}

TEST(Solve, BracketsAndIsFeasibleOnRandomInstances) {
  SplitMix64 rng(77);
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = 5 + rng.Below(30), m = 5 + rng.Below(30);
    std::vector<std::vector<ElementId>> sets(m);
    std::vector<double> costs(m);
    for (std::size_t s = 0; s < m; ++s) {
      costs[s] = rng.Uniform(1.0, 10.0);
      for (std::size_t e = 0; e < n; ++e) {
        if (rng.Bernoulli(0.15)) sets[s].push_back(static_cast<ElementId>(e));
      }
    }
    for (std::size_t e = 0; e < n; ++e) {
      auto& s = sets[rng.Below(m)];
      if (std::find(s.begin(), s.end(), static_cast<ElementId>(e)) == s.end()) {
        s.push_back(static_cast<ElementId>(e));
        std::sort(s.begin(), s.end());
      }
    }
    const SetSystem sys = MakeSetSystem(n, sets, costs);
    const LpModel model = FractionalLp(sys, AllElements(n));
    const BaselineResult r = SolveLp(model, 0.01);
    EXPECT_LE(lp::MaxViolation(model.problem, r.witness), 1e-9);
    EXPECT_NEAR(lp::Objective(model.problem, r.witness), r.value,
                1e-9 * r.value);
    EXPECT_LE(r.lower_bound, r.value);
    EXPECT_LE(r.value, 1.01 * r.lower_bound + 1e-9);
    if (m <= 18) {
      EXPECT_LE(r.lower_bound, testing::BruteSetCover(sys, AllElements(n)) + 1e-9);
    }
  }
}

TEST(Solve, GenericCoveringProblem) {
  // min x0 + 2 x1 s.t. x0 + x1 >= 1, x1 >= 0.25, 0 <= x <= 1: value 1.25.
  lp::Problem p;
  p.num_vars = 2;
  p.costs = {1.0, 2.0};
  p.upper = {1.0, 1.0};
  p.rows = {{{0, 1.0}, {1, 1.0}}, {{1, 1.0}}};
  p.rhs = {1.0, 0.25};
  const lp::Solution s = lp::Solve(
      p, [&p](std::vector<double>& x) { lp::RepairCovering(p, x); },
      lp::Options{0.001});
  EXPECT_TRUE(s.converged);
  EXPECT_NEAR(s.value, 1.25, 0.0015);
  EXPECT_LE(s.lower_bound, 1.25 + 1e-9);
  const std::vector<double> y = {1.0, 1.0};
  EXPECT_NEAR(lp::LagrangianBound(p, y), 1.25, 1e-12);
}

TEST(Solve, WarmStartFromPrefixKeepsBracket) {
  SplitMix64 rng(91);
  std::vector<std::vector<ElementId>> sets(30);
  std::vector<double> costs(30);
  for (std::size_t s = 0; s < 30; ++s) {
    costs[s] = rng.Uniform(1.0, 10.0);
    for (std::size_t e = 0; e < 40; ++e) {
      if (rng.Bernoulli(0.1) || e % 30 == s) {
        sets[s].push_back(static_cast<ElementId>(e));
      }
    }
  }
  const SetSystem sys = MakeSetSystem(40, sets, costs);
  const std::vector<ElementId> all = AllElements(40);
  const BaselineResult half = OptFractional(sys, std::span(all).first(20));
  const BaselineResult warm = OptFractional(sys, all, 0.01, &half);
  const BaselineResult cold = OptFractional(sys, all, 0.01);
  EXPECT_LE(warm.lower_bound, cold.value * (1.0 + 1e-9));
  EXPECT_LE(cold.lower_bound, warm.value * (1.0 + 1e-9));
}

}  // namespace
}  // namespace rocover
