#ifndef ROCOVER_HARNESS_H_
#define ROCOVER_HARNESS_H_

// End-to-end runs and sweeps on instance documents: oracle construction,
// prefix baselines for guess-and-double, ratio reporting and CSV output.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rocover/baselines.h"
#include "rocover/framework.h"
#include "rocover/instances.h"

namespace rocover {

// The oracle points into `file`, which must outlive it.
std::unique_ptr<ProblemOracle> MakeOracle(const InstanceFile& file);

// Whether the exact search accepts this instance under `limits`.
bool ExactSearchFits(const InstanceFile& file, const SearchLimits& limits);

BaselineResult ComputeBaseline(const InstanceFile& file, BaselineKind kind,
                               std::span<const ElementId> subset,
                               double eps = 0.01,
                               const SearchLimits& limits = {});

// Prefix baseline for one run (integral or lp mode). Keeps a feasible
// witness for the current prefix and extends it greedily per arrival;
// whenever the witness cost stays <= est it is returned instead of solving.
// lp mode warm-starts each solve from the previous one. cip baselines are
// for the full program Ax >= 1.
class PrefixTracker {
 public:
  PrefixTracker(const InstanceFile& file, EstMode mode, double eps = 0.01,
                SearchLimits limits = {});
  ~PrefixTracker();
  PrefixTracker(PrefixTracker&&) noexcept;

  double operator()(std::span<const ElementId> prefix, double est);

  std::size_t solves() const;
  PrefixBaseline AsBaseline();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

enum class Accounting { kRealized, kPlanned };
enum class RatioBaseline { kAuto, kIntegral, kLp, kGreedy, kNone };

struct RunOptions {
  RunConfig config;
  std::uint64_t order_seed = 0;
  // Explicit arrival order; a seeded permutation is drawn when empty.
  std::vector<ElementId> order;
  Accounting accounting = Accounting::kRealized;
  RatioBaseline ratio_baseline = RatioBaseline::kAuto;
  double lp_eps = 0.01;
  SearchLimits limits;
};

struct RunReport {
  RunResult result;
  std::vector<ElementId> arrivals;
  double backup_cost = 0.0;    // per the accounting option
  double sampling_cost = 0.0;
  double total_cost = 0.0;     // backup + sampling
  // cip: the doubled cost of the finalized full cover; otherwise total.
  double reported_cost = 0.0;
  std::optional<BaselineResult> baseline;
  double ratio = 0.0;  // reported_cost / baseline value (NaN if none)
  std::optional<std::size_t> tau;
  std::size_t baseline_solves = 0;

  int phase_count() const { return result.final_state.phase + 1; }
};

// Resolved estimate mode: kIntegral when the exact search fits, else kLp.
EstMode AutoEstMode(const InstanceFile& file, const SearchLimits& limits);

// Runs the online algorithm and checks the outcome: every element served,
// the cip doubled solution satisfies Ax >= 1 within 1e-9, every nmfl client
// is assigned to an open facility. Violations throw ContractViolation.
RunReport RunInstance(const InstanceFile& file, const RunOptions& options);

// One line: total, split, estimate history, phases and ratio.
std::string SummaryLine(const RunReport& report);

struct SweepCell {
  std::size_t n = 0;
  std::size_t m = 0;
};

struct SweepSpec {
  ProblemKind kind = ProblemKind::kSetCover;
  std::vector<SweepCell> grid;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  // nullopt picks integral when the exact search fits, lp otherwise.
  std::optional<EstMode> est_mode;
  double fixed_est = 0.0;
  double eta = oco::kDefaultEta;
  bool record_phi = false;
  RatioBaseline ratio_baseline = RatioBaseline::kAuto;
  // Expected number of resources per element; sets density = min(1, k / m).
  double per_element = 3.0;
  std::size_t jobs = 1;
  SearchLimits limits;
};

struct RatioRecord {
  std::size_t cell = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t trial = 0;
  std::string instance_id;
  std::uint64_t seed = 0;
  std::string est_mode;
  double alg_cost = 0.0;
  double opt_value = 0.0;
  BaselineKind opt_kind = BaselineKind::kIntegral;
  double ratio = 0.0;
  double log_mn = 0.0;
  int phase_count = 0;
  std::optional<std::size_t> tau;
  std::string error;  // nonempty for a failed run

  bool ok() const { return error.empty(); }
};

struct CellSummary {
  SweepCell cell;
  std::size_t ok_trials = 0;
  double mean_ratio = 0.0;
  double p90_ratio = 0.0;
  double mean_normalized = 0.0;  // mean of ratio / ln(mn)
  double p90_normalized = 0.0;
};

struct SweepResult {
  std::vector<RatioRecord> records;  // cell-major, trial order
  std::vector<CellSummary> cells;
};

// Trial (cell c, trial k) uses instance seed DeriveSeed(seed, kTrial, c, k)
// and derives its order and sampling seeds from that. Failed runs become
// rows with an error and the sweep continues. Output is independent of
// `jobs`.
SweepResult Sweep(const SweepSpec& spec);

// row_type,cell,n,m,trial,instance_id,seed,est_mode,alg_cost,opt_value,
// opt_kind,ratio,log_mn,ratio_over_log_mn,phase_count,tau,error,p90_ratio,
// p90_ratio_over_log_mn
// One "data" row per trial, then one "aggregate" row per cell whose trial
// column counts successful trials, ratio columns hold means and the p90
// columns 90th percentiles (nearest rank).
void WriteSweepCsv(std::ostream& out, const SweepResult& result);

// Generator used by sweeps: the family's random generator at (n, m) with
// density min(1, per_element / m).
InstanceFile SweepInstance(ProblemKind kind, std::size_t n, std::size_t m,
                           double per_element, std::uint64_t seed);

}  // namespace rocover

#endif  // ROCOVER_HARNESS_H_
