#ifndef ROCOVER_FRAMEWORK_H_
#define ROCOVER_FRAMEWORK_H_

// The generic random-order covering loop. At each arrival e:
//
//   kappa  <- oracle.Kappa(e, bought)                (before any purchase)
//   Backup:   buy oracle.Augment(e, bought); cost <= alpha * kappa
//   Sampling: buy each resource S w.p. min(1, kappa / est * p_S), p = Play()
//   OCO:      feed oracle.GainSubgradient(e, bought-before-step, p, est)
//
// and est is managed by guess-and-double against a prefix baseline.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rocover/oco.h"
#include "rocover/rng.h"
#include "rocover/sparse.h"

namespace rocover {

// Copy counts per resource. Set-like problems keep counts in {0, 1}.
class Holdings {
 public:
  Holdings() = default;
  explicit Holdings(std::size_t num_resources) : copies_(num_resources, 0) {}

  std::size_t size() const { return copies_.size(); }
  std::int64_t copies(ResourceId r) const { return copies_[index(r)]; }
  bool has(ResourceId r) const { return copies_[index(r)] > 0; }
  void add(ResourceId r, std::int64_t k = 1) { copies_[index(r)] += k; }
  std::span<const std::int64_t> counts() const { return copies_; }

  friend bool operator==(const Holdings&, const Holdings&) = default;

 private:
  static std::size_t index(ResourceId r) { return static_cast<std::size_t>(r); }
  std::vector<std::int64_t> copies_;
};

// Purchases proposed by an augmentation. One entry per copy bought. `cost`
// includes any per-element service payment the plan implies (facility
// connection), so it is directly comparable with kappa.
struct Augmentation {
  std::vector<ResourceId> purchases;
  double cost = 0.0;
};

// How an element is served after all purchases of its step.
struct Service {
  ResourceId resource = -1;
  double cost = 0.0;
};

// The per-problem contract that plugs a covering problem into the loop.
//
//   Augment(e, R).cost / alpha() <= Kappa(e, R) <= Augment(e, R).cost
//   Kappa(e, R) is non-increasing as R grows
//   every GainSubgradient entry for resource S lies in [0, c_S / est]
class ProblemOracle {
 public:
  virtual ~ProblemOracle() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t num_elements() const = 0;
  virtual std::span<const double> resource_costs() const = 0;
  virtual double alpha() const = 0;

  virtual double Kappa(ElementId e, const Holdings& held) const = 0;
  virtual Augmentation Augment(ElementId e, const Holdings& held) const = 0;
  virtual SparseVector GainSubgradient(ElementId e, const Holdings& held,
                                       std::span<const double> p,
                                       double est) const = 0;
  virtual double GainValue(ElementId e, const Holdings& held,
                           std::span<const double> p, double est) const = 0;

  // A certified lower bound on aug(e, {}), hence on the optimum of any
  // instance containing e. Exact when alpha() == 1.
  virtual double InitialAug(ElementId e) const = 0;

  // Whether a sampled resource that is already held is bought again.
  virtual bool CopiesAllowed() const { return false; }

  virtual bool IsServed(ElementId e, const Holdings& held) const = 0;

  // Payment made by e once its step's purchases are in place.
  virtual Service Serve(ElementId, const Holdings&) const { return {}; }

  std::size_t num_resources() const { return resource_costs().size(); }
};

enum class EstMode { kIntegral, kLp, kFixed };

struct RunConfig {
  double eta = oco::kDefaultEta;
  std::uint64_t seed = 0;
  EstMode est_mode = EstMode::kIntegral;
  double fixed_est = 0.0;  // used when est_mode == kFixed
  // Clamp sampling probabilities at 1. When off, a probability above 1 is a
  // contract violation.
  bool sampling_cap = true;
  // Omniscient diagnostics; never read by the algorithm's decisions.
  bool record_potential = false;
  bool record_kappa = false;
  // Resources held before the first arrival, at no cost.
  std::vector<ResourceId> warm_start;
};

struct TraceEvent {
  std::size_t t = 0;
  ElementId element = 0;
  double kappa = 0.0;
  std::vector<ResourceId> backup_resources;
  double backup_cost = 0.0;     // realized: purchases plus service payment
  double planned_backup = 0.0;  // Augment(e, R^t).cost
  std::vector<ResourceId> sampled_resources;
  double sampling_cost = 0.0;
  double expected_sampling_cost = 0.0;
  SparseVector gradient;
  double gain = 0.0;  // gain_{t,e}(p^t)
  double est = 0.0;
  int phase = 0;
  std::optional<double> phi;
  // kappa of every not-yet-arrived element before this step (NaN for
  // arrived ones); filled only with record_kappa.
  std::vector<double> future_kappa;

  double cost() const { return backup_cost + sampling_cost; }
};

struct RunState {
  Holdings bought;
  double est = 0.0;
  oco::OcoState learner;
  std::size_t t = 0;
  int phase = 0;
  double backup_cost = 0.0;
  double sampling_cost = 0.0;
  std::vector<Service> service;   // per element, valid once arrived
  std::vector<char> arrived;      // per element
  std::vector<double> est_history;  // est after each doubling episode

  double spent() const { return backup_cost + sampling_cost; }
};

struct RunResult {
  double total_cost = 0.0;
  std::vector<TraceEvent> trace;
  RunState final_state;
};

// Value of the offline baseline on the elements seen so far. The current
// estimate is passed along so that an implementation may return any upper
// bound v on the baseline with v <= est in place of the exact value: no
// doubling happens either way.
using PrefixBaseline =
    std::function<double(std::span<const ElementId> prefix, double est)>;

// Fresh state: nothing bought (besides config.warm_start), learner uniform
// at scale `initial_est`.
RunState InitRun(const ProblemOracle& oracle, const RunConfig& config,
                 double initial_est);

// One arrival. `rng` supplies the sampling draws for this step only.
TraceEvent StepRun(const ProblemOracle& oracle, RunState& state, ElementId e,
                   SplitMix64& rng, const RunConfig& config);

// Doubles est until it dominates `baseline`, resetting the learner once per
// episode. Returns whether a doubling occurred. An infinite baseline throws
// InfeasibleInstance.
bool UpdateEstimate(const ProblemOracle& oracle, RunState& state,
                    double baseline, double eta);

// sum over `future` of Kappa(f, held).
double Potential(const ProblemOracle& oracle, const Holdings& held,
                 std::span<const ElementId> future);

// First t with phi <= est in a trace recorded with potentials.
std::optional<std::size_t> StoppingDiagnostic(
    std::span<const TraceEvent> trace);

// Full run over `arrivals`, which must be a permutation of the elements.
// `baseline` is required unless config.est_mode == kFixed.
RunResult Run(const ProblemOracle& oracle, std::span<const ElementId> arrivals,
              const RunConfig& config, const PrefixBaseline& baseline = {});

// t,element_id,kappa,backup_cost,n_sampled,sampling_cost,est,phase,phi
void WriteTraceCsv(std::ostream& out, std::span<const TraceEvent> trace);

// "%.12g" formatting used by every CSV writer.
std::string FormatReal(double value);

}  // namespace rocover

#endif  // ROCOVER_FRAMEWORK_H_
