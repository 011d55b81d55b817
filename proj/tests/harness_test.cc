#include "rocover/harness.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.h"
#include "rocover/errors.h"

namespace rocover {
namespace {

using testing::AllElements;

std::size_t CountRows(const std::string& csv, const std::string& type) {
  std::istringstream in(csv);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) n += line.rfind(type + ",", 0) == 0 ? 1 : 0;
  return n;
}

TEST(PrefixTracker, LpModeUsesFractionalValueOnTriangle) {
  const InstanceFile file = testing::TriangleFile();
  PrefixTracker tracker(file, EstMode::kLp);
  const std::vector<ElementId> all = AllElements(3);
  const double v = tracker(all, 0.5);
  EXPECT_NEAR(v, 1.5, 0.015);
  EXPECT_GE(v, 1.5 - 1e-9);
}

TEST(PrefixTracker, ReturnsExactValueOrCheapUpperBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::vector<InstanceFile> files = {
        GenSetCover({12, 10, 0.3, 1.0, 10.0, seed}),
        GenMulticover({12, 10, 0.4, 3, seed}),
        GenCip({10, 6, 0.3, 0.3, 1.0, 1.0, 5.0, seed}),
        GenNmfl({10, 8, 1.0, 10.0, 0.0, 10.0, seed})};
    for (const InstanceFile& file : files) {
      PrefixTracker tracker(file, EstMode::kIntegral);
      std::vector<ElementId> order = PermuteArrivals(file.num_elements(), seed);
      double est = 1.0;
      for (std::size_t t = 0; t < order.size(); ++t) {
        const auto prefix = std::span(order).first(t + 1);
        const double opt = testing::BruteOpt(file, prefix);
        const double v = tracker(prefix, est);
        if (v <= est) {
          EXPECT_GE(v, opt * (1.0 - 1e-9)) << ProblemKindName(file.kind());
        } else {
          EXPECT_NEAR(v, opt, 1e-9 * opt) << ProblemKindName(file.kind());
        }
        while (est < v) est *= 2.0;
      }
    }
  }
}

TEST(RunInstance, TriangleMedianRatio) {
  const InstanceFile file = testing::TriangleFile();
  std::vector<double> ratios;
  for (std::uint64_t seed = 0; seed < 101; ++seed) {
    RunOptions ro;
    ro.config.seed = seed;
    ro.order_seed = seed;
    const RunReport r = RunInstance(file, ro);
    ASSERT_TRUE(r.baseline.has_value());
    EXPECT_EQ(r.baseline->kind, BaselineKind::kIntegral);
    EXPECT_DOUBLE_EQ(r.baseline->value, 2.0);
    EXPECT_LE(r.total_cost, 6.0);
    ratios.push_back(r.ratio);
  }
  std::nth_element(ratios.begin(), ratios.begin() + 50, ratios.end());
  EXPECT_LE(ratios[50], 3.0);
}

TEST(RunInstance, SingleSetCostAndRatio) {
  InstanceFile file;
  file.payload = MakeSetSystem(1, {{0}}, {1.0});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RunOptions ro;
    ro.config.seed = seed;
    const RunReport r = RunInstance(file, ro);
    EXPECT_GE(r.total_cost, 1.0);
    EXPECT_LE(r.total_cost, 2.0);
    EXPECT_GE(r.ratio, 1.0);
    EXPECT_LE(r.ratio, 2.0);
  }
}

TEST(RunInstance, WarmStartWithUniversalSetCostsNothing) {
  InstanceFile file;
  file.payload = MakeSetSystem(3, {{0, 1, 2}, {0}, {1}, {2}}, {3.0, 1.0, 1.0, 1.0});
  RunOptions ro;
  ro.config.warm_start = {0};
  ro.config.est_mode = EstMode::kFixed;
  ro.config.fixed_est = 1.0;
  const RunReport r = RunInstance(file, ro);
  EXPECT_DOUBLE_EQ(r.total_cost, 0.0);
}

TEST(RunInstance, SummaryMatchesTrace) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (const InstanceFile& file :
         {GenSetCover({20, 15, 0.2, 1.0, 10.0, seed}),
          GenCip({15, 10, 0.3, 0.2, 1.0, 1.0, 10.0, seed}),
          GenNmfl({15, 10, 1.0, 10.0, 0.0, 10.0, seed})}) {
      RunOptions ro;
      ro.config.seed = seed;
      ro.config.est_mode = EstMode::kLp;
      ro.ratio_baseline = RatioBaseline::kLp;
      const RunReport r = RunInstance(file, ro);
      double sum = 0.0;
      for (const TraceEvent& ev : r.result.trace) sum += ev.cost();
      EXPECT_NEAR(sum, r.total_cost, 1e-9 * std::max(1.0, sum));
      EXPECT_NEAR(r.backup_cost + r.sampling_cost, r.total_cost, 1e-9);
      if (file.kind() == ProblemKind::kCip) {
        EXPECT_GE(r.reported_cost, r.total_cost);
      } else {
        EXPECT_DOUBLE_EQ(r.reported_cost, r.total_cost);
      }
      EXPECT_NE(SummaryLine(r).find("ratio="), std::string::npos);
    }
  }
}

TEST(RunInstance, PlannedAccountingUsesAugmentCost) {
  const InstanceFile file = GenNmfl({20, 10, 1.0, 10.0, 0.0, 10.0, 3});
  RunOptions ro;
  ro.config.seed = 4;
  ro.accounting = Accounting::kPlanned;
  ro.ratio_baseline = RatioBaseline::kNone;
  const RunReport planned = RunInstance(file, ro);
  double plan = 0.0;
  for (const TraceEvent& ev : planned.result.trace) plan += ev.planned_backup;
  EXPECT_NEAR(planned.backup_cost, plan, 1e-9 * std::max(1.0, plan));
  ro.accounting = Accounting::kRealized;
  const RunReport realized = RunInstance(file, ro);
  EXPECT_LE(realized.backup_cost, planned.backup_cost + 1e-9);
}

TEST(RunInstance, AutoBaselineFallsBackToLpBeyondCaps) {
  const InstanceFile file = GenSetCover({30, 40, 0.1, 1.0, 10.0, 5});
  RunOptions ro;
  ro.config.est_mode = EstMode::kLp;
  const RunReport r = RunInstance(file, ro);
  ASSERT_TRUE(r.baseline.has_value());
  EXPECT_EQ(r.baseline->kind, BaselineKind::kLp);
  ro.ratio_baseline = RatioBaseline::kIntegral;
  EXPECT_THROW(RunInstance(file, ro), SizeCapExceeded);
}

TEST(Sweep, OneCellOneTrial) {
  SweepSpec spec;
  spec.grid = {{5, 5}};
  spec.trials = 1;
  std::ostringstream out;
  WriteSweepCsv(out, Sweep(spec));
  EXPECT_EQ(CountRows(out.str(), "data"), 1u);
  EXPECT_EQ(CountRows(out.str(), "aggregate"), 1u);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "row_type,cell,n,m,trial,instance_id,seed,est_mode,alg_cost,"
            "opt_value,opt_kind,ratio,log_mn,ratio_over_log_mn,phase_count,"
            "tau,error,p90_ratio,p90_ratio_over_log_mn");
}

TEST(Sweep, CountsAndJobIndependence) {
  SweepSpec spec;
  spec.kind = ProblemKind::kMulticover;
  spec.grid = {{6, 6}, {9, 9}};
  spec.trials = 50;
  spec.seed = 11;
  const SweepResult one = Sweep(spec);
  spec.jobs = 3;
  const SweepResult three = Sweep(spec);
  std::ostringstream a, b;
  WriteSweepCsv(a, one);
  WriteSweepCsv(b, three);
  EXPECT_EQ(CountRows(a.str(), "data"), 100u);
  EXPECT_EQ(a.str(), b.str());
  for (const RatioRecord& r : one.records) {
    ASSERT_TRUE(r.ok()) << r.error;
    EXPECT_NEAR(r.log_mn, std::log(static_cast<double>(r.n * r.m)), 1e-12);
    if (r.opt_kind == BaselineKind::kIntegral) {
      EXPECT_GE(r.ratio, 1.0 - 1e-9);
    }
  }
}

TEST(Sweep, FailedRunsBecomeErrorRows) {
  SweepSpec spec;
  spec.grid = {{5, 5}};
  spec.trials = 2;
  spec.ratio_baseline = RatioBaseline::kIntegral;
  spec.limits.max_resources = 1;  // every integral solve exceeds the cap
  spec.est_mode = EstMode::kLp;
  const SweepResult r = Sweep(spec);
  ASSERT_EQ(r.records.size(), 2u);
  for (const RatioRecord& rec : r.records) EXPECT_FALSE(rec.ok());
  EXPECT_EQ(r.cells[0].ok_trials, 0u);
}

}  // namespace
}  // namespace rocover
