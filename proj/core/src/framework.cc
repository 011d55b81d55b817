#include "rocover/framework.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "rocover/errors.h"

namespace rocover {
namespace {

constexpr double kCostSlack = 1e-9;
constexpr double kGradientSlack = 1e-12;

std::string StepLabel(std::size_t t, ElementId e) {
  return "step " + std::to_string(t) + " (element " + std::to_string(e) + ")";
}

void CheckGradient(const ProblemOracle& oracle, const SparseVector& grad,
                   double est, std::size_t t, ElementId e) {
  const auto costs = oracle.resource_costs();
  for (const SparseEntry& entry : grad) {
    if (entry.index < 0 ||
        static_cast<std::size_t>(entry.index) >= costs.size()) {
      throw ContractViolation(StepLabel(t, e) + ": gradient index out of range");
    }
    const double bound = costs[static_cast<std::size_t>(entry.index)] / est;
    if (!(entry.value >= 0.0) || entry.value > bound + kGradientSlack) {
      throw ContractViolation(StepLabel(t, e) + ": gradient entry " +
                              std::to_string(entry.value) + " on resource " +
                              std::to_string(entry.index) + " outside [0, " +
                              std::to_string(bound) + "]");
    }
  }
}

// Buys `r` unless it is already held and copies are not allowed. Returns the
// marginal cost paid.
double Buy(const ProblemOracle& oracle, Holdings& held, ResourceId r) {
  if (!oracle.CopiesAllowed() && held.has(r)) return 0.0;
  held.add(r);
  return oracle.resource_costs()[static_cast<std::size_t>(r)];
}

}  // namespace

std::string FormatReal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

RunState InitRun(const ProblemOracle& oracle, const RunConfig& config,
                 double initial_est) {
  if (!(initial_est > 0.0) || !std::isfinite(initial_est)) {
    throw InvalidArgument("InitRun: initial estimate must be positive");
  }
  const std::size_t m = oracle.num_resources();
  RunState state;
  state.bought = Holdings(m);
  for (ResourceId r : config.warm_start) {
    if (r < 0 || static_cast<std::size_t>(r) >= m) {
      throw InvalidArgument("InitRun: warm-start resource out of range");
    }
    if (oracle.CopiesAllowed() || !state.bought.has(r)) state.bought.add(r);
  }
  state.est = initial_est;
  state.learner = oco::InitState(m, oracle.resource_costs(), initial_est,
                                 config.eta);
  state.service.assign(oracle.num_elements(), Service{});
  state.arrived.assign(oracle.num_elements(), 0);
  state.est_history.push_back(initial_est);
  return state;
}

TraceEvent StepRun(const ProblemOracle& oracle, RunState& state, ElementId e,
                   SplitMix64& rng, const RunConfig& config) {
  if (e < 0 || static_cast<std::size_t>(e) >= oracle.num_elements()) {
    throw InvalidArgument("StepRun: element out of range");
  }
  if (state.arrived[static_cast<std::size_t>(e)]) {
    throw InvalidArgument("StepRun: element " + std::to_string(e) +
                          " arrived twice");
  }
  const std::size_t t = state.t;
  const auto costs = oracle.resource_costs();
  const double est = state.est;

  TraceEvent event;
  event.t = t;
  event.element = e;
  event.est = est;
  event.phase = state.phase;

  const double kappa = oracle.Kappa(e, state.bought);
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw ContractViolation(StepLabel(t, e) + ": kappa is not a finite "
                            "nonnegative number");
  }
  event.kappa = kappa;

  // The learner's play and the gain are both taken at the pre-step state.
  const std::vector<double> p = oco::Play(state.learner);
  event.gradient = oracle.GainSubgradient(e, state.bought, p, est);
  event.gain = oracle.GainValue(e, state.bought, p, est);
  CheckGradient(oracle, event.gradient, est, t, e);

  // Backup.
  const double slack = kCostSlack * std::max(1.0, kappa);
  const double alpha = oracle.alpha();
  const Augmentation aug = oracle.Augment(e, state.bought);
  event.planned_backup = aug.cost;
  if (aug.cost > alpha * kappa + slack) {
    throw ContractViolation(StepLabel(t, e) + ": backup cost " +
                            FormatReal(aug.cost) + " exceeds alpha * kappa = " +
                            FormatReal(alpha * kappa));
  }
  if (aug.cost < kappa - slack) {
    throw ContractViolation(StepLabel(t, e) + ": backup cost " +
                            FormatReal(aug.cost) + " below kappa = " +
                            FormatReal(kappa));
  }
  double purchase_cost = 0.0;
  for (ResourceId r : aug.purchases) {
    const double paid = Buy(oracle, state.bought, r);
    if (paid > 0.0) event.backup_resources.push_back(r);
    purchase_cost += paid;
  }

  // Sampling. One draw per resource keeps the stream layout fixed.
  const double ratio = kappa / est;
  for (std::size_t s = 0; s < costs.size(); ++s) {
    double prob = ratio * p[s];
    if (prob > 1.0) {
      if (!config.sampling_cap && prob > 1.0 + kCostSlack) {
        throw ContractViolation(StepLabel(t, e) + ": sampling probability " +
                                FormatReal(prob) + " exceeds 1");
      }
      prob = 1.0;
    }
    event.expected_sampling_cost += costs[s] * prob;
    const double u = rng.Uniform();
    if (u < prob) {
      const double paid =
          Buy(oracle, state.bought, static_cast<ResourceId>(s));
      if (paid > 0.0) {
        event.sampled_resources.push_back(static_cast<ResourceId>(s));
        event.sampling_cost += paid;
      }
    }
  }
  if (kappa <= est && event.expected_sampling_cost >
                          kappa * (1.0 + oco::kFeasibilityEps) + 1e-12) {
    throw ContractViolation(StepLabel(t, e) + ": expected sampling cost " +
                            FormatReal(event.expected_sampling_cost) +
                            " exceeds kappa = " + FormatReal(kappa));
  }

  // Service after every purchase of this step.
  const Service service = oracle.Serve(e, state.bought);
  event.backup_cost = purchase_cost + service.cost;
  if (event.backup_cost > alpha * kappa + slack) {
    throw ContractViolation(StepLabel(t, e) + ": realized backup cost " +
                            FormatReal(event.backup_cost) +
                            " exceeds alpha * kappa");
  }
  if (!oracle.IsServed(e, state.bought)) {
    throw ContractViolation(StepLabel(t, e) + ": element not served");
  }
  state.service[static_cast<std::size_t>(e)] = service;
  state.arrived[static_cast<std::size_t>(e)] = 1;

  // OCO.
  try {
    oco::StepInPlace(state.learner, event.gradient);
  } catch (const InvalidArgument& err) {
    throw ContractViolation(StepLabel(t, e) + ": " + err.what());
  }

  state.backup_cost += event.backup_cost;
  state.sampling_cost += event.sampling_cost;
  state.t = t + 1;
  return event;
}

bool UpdateEstimate(const ProblemOracle& oracle, RunState& state,
                    double baseline, double eta) {
  if (!std::isfinite(baseline)) {
    throw InfeasibleInstance("UpdateEstimate: some seen element cannot be "
                             "served by any resource");
  }
  if (!(baseline > state.est * (1.0 + 1e-12))) return false;
  while (state.est < baseline) state.est *= 2.0;
  ++state.phase;
  state.learner =
      oco::InitState(oracle.num_resources(), oracle.resource_costs(),
                     state.est, eta);
  state.est_history.push_back(state.est);
  return true;
}

double Potential(const ProblemOracle& oracle, const Holdings& held,
                 std::span<const ElementId> future) {
  double total = 0.0;
  for (ElementId f : future) total += oracle.Kappa(f, held);
  return total;
}

std::optional<std::size_t> StoppingDiagnostic(
    std::span<const TraceEvent> trace) {
  for (const TraceEvent& event : trace) {
    if (event.phi && *event.phi <= event.est) return event.t;
  }
  return std::nullopt;
}

RunResult Run(const ProblemOracle& oracle, std::span<const ElementId> arrivals,
              const RunConfig& config, const PrefixBaseline& baseline) {
  const std::size_t n = oracle.num_elements();
  if (arrivals.size() != n) {
    throw InvalidArgument("Run: arrival sequence must list every element once");
  }
  {
    std::vector<char> seen(n, 0);
    for (ElementId e : arrivals) {
      if (e < 0 || static_cast<std::size_t>(e) >= n ||
          seen[static_cast<std::size_t>(e)]) {
        throw InvalidArgument("Run: arrival sequence is not a permutation");
      }
      seen[static_cast<std::size_t>(e)] = 1;
    }
  }
  const bool adaptive = config.est_mode != EstMode::kFixed;
  if (adaptive && !baseline) {
    throw InvalidArgument("Run: integral/lp estimate modes need a baseline");
  }
  double initial_est = 1.0;
  if (!adaptive) {
    if (!(config.fixed_est > 0.0)) {
      throw InvalidArgument("Run: fixed estimate must be positive");
    }
    initial_est = config.fixed_est;
  } else if (!arrivals.empty()) {
    initial_est = oracle.InitialAug(arrivals.front());
    if (!std::isfinite(initial_est)) {
      throw InfeasibleInstance("Run: first element cannot be served");
    }
  }

  RunResult result;
  result.final_state = InitRun(oracle, config, initial_est);
  RunState& state = result.final_state;
  result.trace.reserve(n);
  for (std::size_t t = 0; t < arrivals.size(); ++t) {
    const ElementId e = arrivals[t];
    if (adaptive) {
      UpdateEstimate(oracle, state, baseline(arrivals.first(t + 1), state.est),
                     config.eta);
    }
    std::optional<double> phi;
    if (config.record_potential) {
      phi = Potential(oracle, state.bought, arrivals.subspan(t));
    }
    std::vector<double> future_kappa;
    if (config.record_kappa) {
      future_kappa.assign(n, std::numeric_limits<double>::quiet_NaN());
      for (ElementId f : arrivals.subspan(t)) {
        future_kappa[static_cast<std::size_t>(f)] =
            oracle.Kappa(f, state.bought);
      }
    }
    SplitMix64 rng = MakeStream(config.seed, StreamTag::kSampling,
                                static_cast<std::uint64_t>(state.phase), t);
    TraceEvent event = StepRun(oracle, state, e, rng, config);
    event.phi = phi;
    event.future_kappa = std::move(future_kappa);
    result.trace.push_back(std::move(event));
  }
  result.total_cost = state.spent();
  return result;
}

void WriteTraceCsv(std::ostream& out, std::span<const TraceEvent> trace) {
  out << "t,element_id,kappa,backup_cost,n_sampled,sampling_cost,est,phase,"
         "phi\n";
  for (const TraceEvent& ev : trace) {
    out << ev.t << ',' << ev.element << ',' << FormatReal(ev.kappa) << ','
        << FormatReal(ev.backup_cost) << ',' << ev.sampled_resources.size()
        << ',' << FormatReal(ev.sampling_cost) << ',' << FormatReal(ev.est)
        << ',' << ev.phase << ',';
    if (ev.phi) out << FormatReal(*ev.phi);
    out << '\n';
  }
}

}  // namespace rocover
