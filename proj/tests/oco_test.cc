#include "rocover/oco.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "oracles.h"
#include "rocover/errors.h"
#include "rocover/rng.h"

namespace rocover::oco {
namespace {

TEST(InitState, UniformWhenCapsInactive) {
  const std::vector<double> costs = {1.0, 1.0};
  const OcoState s = InitState(2, costs, 1.0, 0.5);
  EXPECT_DOUBLE_EQ(s.point.coords[0], 0.5);
  EXPECT_DOUBLE_EQ(s.point.coords[1], 0.5);
  EXPECT_DOUBLE_EQ(s.point.caps[0], 1.0);
  EXPECT_DOUBLE_EQ(s.point.caps[1], 1.0);
  const OcoState four = InitState(4, std::vector<double>(4, 1.0), 1.0);
  for (double c : four.point.coords) EXPECT_DOUBLE_EQ(c, 0.25);
}

TEST(InitState, BindingCapKeepsSlack) {
  const std::vector<double> costs = {0.1, 10.0};
  const OcoState s = InitState(2, costs, 1.0, 0.5);
  EXPECT_DOUBLE_EQ(s.point.caps[0], 0.1);
  EXPECT_DOUBLE_EQ(s.point.caps[1], 1.0);
  EXPECT_DOUBLE_EQ(s.point.coords[0], 0.1 * (1.0 - 1e-9));
  EXPECT_DOUBLE_EQ(s.point.coords[1], 0.5);
  EXPECT_TRUE(IsFeasible(s.point));
}

TEST(InitState, RejectsBadArguments) {
  const std::vector<double> one = {1.0};
  EXPECT_THROW(InitState(0, {}, 1.0), InvalidArgument);
  EXPECT_THROW(InitState(1, one, 0.0), InvalidArgument);
  EXPECT_THROW(InitState(1, std::vector<double>{0.0}, 1.0), InvalidArgument);
  EXPECT_THROW(InitState(1, one, 1.0, 0.0), InvalidArgument);
  EXPECT_THROW(InitState(1, one, 1.0, 1.5), InvalidArgument);
}

TEST(UnnormalizedKl, KnownValues) {
  const std::vector<double> a = {0.3, 0.7};
  EXPECT_DOUBLE_EQ(UnnormalizedKl(a, a), 0.0);
  const std::vector<double> p = {0.5, 0.5}, q = {0.25, 0.25};
  // Frozen from the long double reference: ln 2 - 0.5.
  EXPECT_NEAR(UnnormalizedKl(p, q), 0.19314718055994530942, 1e-15);
  EXPECT_NEAR(UnnormalizedKl(p, q), static_cast<double>(testing::UklReference(p, q)),
              1e-15);
  const std::vector<double> p2 = {0.0, 1.0}, q2 = {0.5, 0.5};
  EXPECT_NEAR(UnnormalizedKl(p2, q2), 0.69314718055994530942, 1e-15);
}

TEST(UnnormalizedKl, NonnegativeAndZeroOnlyOnDiagonal) {
  SplitMix64 rng(11);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t d = 1 + rng.Below(6);
    std::vector<double> p(d), q(d);
    for (std::size_t i = 0; i < d; ++i) {
      p[i] = rng.Uniform(0.01, 3.0);
      q[i] = rng.Uniform(0.01, 3.0);
    }
    const double v = UnnormalizedKl(p, q);
    EXPECT_GE(v, 0.0);
    EXPECT_NEAR(v, static_cast<double>(testing::UklReference(p, q)), 1e-12);
    EXPECT_GT(v, 0.0);
    EXPECT_DOUBLE_EQ(UnnormalizedKl(p, p), 0.0);
  }
}

TEST(BregmanProject, FeasiblePointIsFixed) {
  const std::vector<double> point = {0.4, 0.4}, caps = {1.0, 1.0};
  const CappedSimplexPoint r = BregmanProject(point, caps);
  EXPECT_DOUBLE_EQ(r.coords[0], 0.4);
  EXPECT_DOUBLE_EQ(r.coords[1], 0.4);
}

TEST(BregmanProject, SimplexScaling) {
  const std::vector<double> point = {1.0, 0.5}, caps = {1.0, 1.0};
  for (const auto& r : {BregmanProject(point, caps),
                        BregmanProjectBisection(point, caps)}) {
    EXPECT_NEAR(r.coords[0], 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(r.coords[1], 1.0 / 3.0, 1e-12);
  }
}

TEST(BregmanProject, CapBindsFirst) {
  const std::vector<double> point = {5.0, 0.1}, caps = {0.3, 1.0};
  const CappedSimplexPoint r = BregmanProject(point, caps);
  EXPECT_NEAR(r.coords[0], 0.3, 1e-12);
  EXPECT_NEAR(r.coords[1], 0.1, 1e-12);
}

// Dense grid oracle: no grid point of the feasible set has smaller uKL.
TEST(BregmanProject, BeatsGridPoints) {
  SplitMix64 rng(3);
  for (int k = 0; k < 100; ++k) {
    const std::vector<double> point = {rng.Uniform(0.01, 2.0),
                                       rng.Uniform(0.01, 2.0)};
    const std::vector<double> caps = {rng.Uniform(0.05, 1.0),
                                      rng.Uniform(0.05, 1.0)};
    const CappedSimplexPoint r = BregmanProject(point, caps);
    const double obj = UnnormalizedKl(r.coords, point);
    for (int a = 0; a <= 200; ++a) {
      for (int b = 0; a + b <= 200; ++b) {
        const std::vector<double> z = {0.005 * a, 0.005 * b};
        if (z[0] > caps[0] || z[1] > caps[1]) continue;
        ASSERT_LE(obj, UnnormalizedKl(z, point) + 1e-9);
      }
    }
  }
}

TEST(BregmanProject, SortAndBisectionAgree) {
  SplitMix64 rng(5);
  for (int k = 0; k < 500; ++k) {
    const std::size_t d = 1 + rng.Below(40);
    std::vector<double> point(d), caps(d);
    for (std::size_t i = 0; i < d; ++i) {
      point[i] = std::exp(rng.Uniform(-20.0, 3.0));
      caps[i] = rng.Uniform(1e-4, 1.0);
    }
    const CappedSimplexPoint a = BregmanProject(point, caps);
    const CappedSimplexPoint b = BregmanProjectBisection(point, caps);
    ASSERT_TRUE(IsFeasible(a));
    for (std::size_t i = 0; i < d; ++i) {
      ASSERT_NEAR(a.coords[i], b.coords[i], 1e-9);
    }
  }
}

TEST(Step, ZeroGradientLeavesPointUnchanged) {
  const std::vector<double> costs = {1.0, 2.0, 3.0};
  const OcoState s = InitState(3, costs, 2.0);
  const OcoState t = Step(s, GradientEstimate{{0.0, 0.0, 0.0}});
  EXPECT_EQ(s.point.coords, t.point.coords);
}

TEST(Step, MultiplicativeUpdateThenProjection) {
  const std::vector<double> costs = {1.0, 1.0};
  const OcoState s = InitState(2, costs, 1.0, std::log(2.0));
  const OcoState t = Step(s, GradientEstimate{{1.0, 0.0}});
  EXPECT_NEAR(t.point.coords[0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(t.point.coords[1], 1.0 / 3.0, 1e-12);
}

TEST(Step, RepeatedGainConcentratesOnFavouredCoordinate) {
  const std::vector<double> costs = {1.0, 1.0};
  OcoState s = InitState(2, costs, 1.0, 0.5);
  for (int t = 0; t < 50; ++t) s = Step(s, GradientEstimate{{1.0, 0.0}});
  // Linear maximizer of <(1, 0), x> over the capped simplex puts 1 there.
  EXPECT_GE(s.point.coords[0], 0.99);
}

TEST(Step, SparseMatchesDense) {
  const std::vector<double> costs = {1.0, 4.0, 0.5, 2.0};
  OcoState dense = InitState(4, costs, 3.0);
  OcoState sparse = dense;
  SplitMix64 rng(17);
  for (int t = 0; t < 200; ++t) {
    GradientEstimate g{std::vector<double>(4, 0.0)};
    SparseVector sv;
    for (std::size_t i = 0; i < 4; ++i) {
      if (rng.Bernoulli(0.5)) {
        g.values[i] = rng.Uniform() * costs[i] / 3.0;
        sv.push_back({static_cast<ResourceId>(i), g.values[i]});
      }
    }
    dense = Step(dense, g);
    StepInPlace(sparse, sv);
    for (std::size_t i = 0; i < 4; ++i) {
      ASSERT_NEAR(dense.point.coords[i], sparse.point.coords[i], 1e-12);
    }
  }
}

TEST(Step, IteratesStayFeasibleAndPositive) {
  SplitMix64 rng(23);
  for (int run = 0; run < 20; ++run) {
    const std::size_t d = 2 + rng.Below(30);
    std::vector<double> costs(d);
    for (double& c : costs) c = rng.Uniform(0.01, 5.0);
    const double scale = rng.Uniform(0.1, 10.0);
    OcoState s = InitState(d, costs, scale, rng.Uniform(0.1, 1.0));
    for (int t = 0; t < 500; ++t) {
      SparseVector g;
      for (std::size_t i = 0; i < d; ++i) {
        if (rng.Bernoulli(0.2)) {
          g.push_back({static_cast<ResourceId>(i), costs[i] / scale});
        }
      }
      StepInPlace(s, g);
      ASSERT_TRUE(IsFeasible(s.point));
      for (double c : s.point.coords) ASSERT_GT(c, 0.0);
    }
  }
}

TEST(Play, InvertsCostScaling) {
  const std::vector<double> costs = {1.0, 1.0};
  const OcoState s = InitState(2, costs, 1.0);
  const std::vector<double> y = Play(s);
  EXPECT_DOUBLE_EQ(y[0], 0.5);
  EXPECT_DOUBLE_EQ(y[1], 0.5);

  OcoState t = InitState(2, std::vector<double>{5.0, 1.0}, 10.0);
  t.point.coords = {0.25, 0.05};
  const std::vector<double> y2 = Play(t);
  EXPECT_NEAR(y2[0], 0.5, 1e-15);
  EXPECT_NEAR(y2[1], 0.5, 1e-15);
}

TEST(Play, BudgetRespected) {
  SplitMix64 rng(29);
  const std::size_t d = 12;
  std::vector<double> costs(d);
  for (double& c : costs) c = rng.Uniform(0.5, 4.0);
  OcoState s = InitState(d, costs, 6.0);
  for (int t = 0; t < 300; ++t) {
    SparseVector g;
    const auto i = static_cast<ResourceId>(rng.Below(d));
    g.push_back({i, costs[static_cast<std::size_t>(i)] / 6.0});
    StepInPlace(s, g);
    const std::vector<double> y = Play(s);
    double spend = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      ASSERT_GE(y[k], 0.0);
      ASSERT_LE(y[k], 1.0);
      spend += costs[k] * y[k];
    }
    ASSERT_LE(spend, 6.0 * (1.0 + 1e-9));
  }
}

// gain_t(y) = min(1, <v_t, y>) with v_t bounded; the multiplicative regret
// bound must hold against any fixed comparator in the playing set.
TEST(Regret, ConcaveGainExtension) {
  constexpr double kEta = 0.5;
  SplitMix64 rng(31);
  for (int run = 0; run < 10; ++run) {
    const std::size_t d = 2 + rng.Below(20);
    std::vector<double> costs(d);
    for (double& c : costs) c = rng.Uniform(0.5, 3.0);
    const double scale = rng.Uniform(1.0, 10.0);
    OcoState s = InitState(d, costs, scale, kEta);
    std::vector<std::vector<double>> vs;
    double alg = 0.0;
    for (int t = 0; t < 4000; ++t) {
      std::vector<double> v(d, 0.0);
      for (std::size_t i = 0; i < d; ++i) {
        if (rng.Bernoulli(0.3)) v[i] = rng.Uniform() * costs[i] / scale;
      }
      const std::vector<double> y = Play(s);
      const double dot = std::inner_product(v.begin(), v.end(), y.begin(), 0.0);
      alg += std::min(1.0, dot);
      SparseVector g;
      if (dot < 1.0) {
        for (std::size_t i = 0; i < d; ++i) {
          if (v[i] > 0.0) g.push_back({static_cast<ResourceId>(i), v[i]});
        }
      }
      StepInPlace(s, g);
      vs.push_back(std::move(v));
    }
    // Comparators: each vertex-like greedy fill in a random density order.
    for (int c = 0; c < 20; ++c) {
      std::vector<std::size_t> order(d);
      std::iota(order.begin(), order.end(), std::size_t{0});
      Shuffle(order, rng);
      std::vector<double> y(d, 0.0);
      double budget = scale;
      for (std::size_t i : order) {
        y[i] = std::min(1.0, budget / costs[i]);
        budget -= y[i] * costs[i];
      }
      double best = 0.0;
      for (const auto& v : vs) {
        best += std::min(1.0, std::inner_product(v.begin(), v.end(), y.begin(), 0.0));
      }
      EXPECT_GE(alg, (1.0 - kEta) * best - 40.0 * std::log(static_cast<double>(d)));
    }
  }
}

}  // namespace
}  // namespace rocover::oco
