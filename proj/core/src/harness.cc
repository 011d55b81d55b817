#include "rocover/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "rocover/errors.h"

namespace rocover {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t idx(std::int64_t v) { return static_cast<std::size_t>(v); }

template <typename F>
decltype(auto) Dispatch(const InstanceFile& file, F&& f) {
  return std::visit(std::forward<F>(f), file.payload);
}

std::vector<ElementId> AllElements(std::size_t n) {
  std::vector<ElementId> all(n);
  std::iota(all.begin(), all.end(), ElementId{0});
  return all;
}

}  // namespace

std::unique_ptr<ProblemOracle> MakeOracle(const InstanceFile& file) {
  return Dispatch(file, [](const auto& p) -> std::unique_ptr<ProblemOracle> {
    using T = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<T, SetSystem>) {
      return std::make_unique<SetCoverOracle>(p);
    } else if constexpr (std::is_same_v<T, MulticoverInstance>) {
      return std::make_unique<MulticoverOracle>(p);
    } else if constexpr (std::is_same_v<T, CipInstance>) {
      return std::make_unique<CipOracle>(p);
    } else {
      return std::make_unique<FacilityOracle>(p);
    }
  });
}

bool ExactSearchFits(const InstanceFile& file, const SearchLimits& limits) {
  if (file.kind() == ProblemKind::kNmfl) {
    return file.num_resources() <= limits.max_facilities;
  }
  return file.num_resources() <= limits.max_resources;
}

BaselineResult ComputeBaseline(const InstanceFile& file, BaselineKind kind,
                               std::span<const ElementId> subset, double eps,
                               const SearchLimits& limits) {
  return Dispatch(file, [&](const auto& p) -> BaselineResult {
    using T = std::decay_t<decltype(p)>;
    switch (kind) {
      case BaselineKind::kIntegral:
        return OptIntegral(p, subset, limits);
      case BaselineKind::kLp:
        return OptFractional(p, subset, eps);
      case BaselineKind::kGreedy:
        if constexpr (std::is_same_v<T, SetSystem> ||
                      std::is_same_v<T, MulticoverInstance>) {
          return GreedyCover(p, subset);
        } else {
          throw InvalidArgument(
              "greedy baseline is defined for setcover and multicover only");
        }
    }
    throw InvalidArgument("unknown baseline kind");
  });
}

// ---------------------------------------------------------------------------
// Prefix tracker.

struct PrefixTracker::Impl {
  const InstanceFile& file;
  EstMode mode;
  double eps;
  SearchLimits limits;
  std::size_t known = 0;

  // Integral witness: copies per resource (open flags for nmfl).
  std::vector<std::int64_t> witness;
  double witness_cost = 0.0;
  std::vector<double> nearest;  // nmfl: distance of each seen client

  // lp mode, covering problems: fractional witness over resources.
  bool covering = true;
  LpModel full_lp;
  std::vector<double> frac;
  double frac_cost = 0.0;
  std::optional<BaselineResult> last_lp;

  bool exact_valid = true;  // exact_value is the baseline of the prefix
  double exact_value = 0.0;
  std::size_t solves = 0;

  Impl(const InstanceFile& f, EstMode m, double e, SearchLimits l)
      : file(f), mode(m), eps(e), limits(l) {
    if (mode == EstMode::kFixed) {
      throw InvalidArgument("PrefixTracker: fixed mode needs no baseline");
    }
    witness.assign(file.num_resources(), 0);
    covering = file.kind() != ProblemKind::kNmfl;
    if (mode == EstMode::kLp && covering) {
      full_lp = Dispatch(file, [&](const auto& p) {
        return FractionalLp(p, AllElements(file.num_elements()));
      });
      frac.assign(file.num_resources(), 0.0);
    }
  }

  // Returns whether the witness had to grow.
  bool ExtendIntegral(ElementId e) {
    return Dispatch(file, [&](const auto& p) -> bool {
      using T = std::decay_t<decltype(p)>;
      if constexpr (std::is_same_v<T, SetSystem>) {
        for (ResourceId s : p.sets_of[idx(e)]) {
          if (witness[idx(s)] > 0) return false;
        }
        ResourceId best = p.sets_of[idx(e)].front();
        for (ResourceId s : p.sets_of[idx(e)]) {
          if (p.costs[idx(s)] < p.costs[idx(best)]) best = s;
        }
        witness[idx(best)] = 1;
        witness_cost += p.costs[idx(best)];
        return true;
      } else if constexpr (std::is_same_v<T, MulticoverInstance>) {
        int have = 0;
        for (ResourceId s : p.system.sets_of[idx(e)]) have += witness[idx(s)] > 0;
        bool grew = false;
        for (ResourceId s : p.system.sets_of[idx(e)]) {
          if (have >= p.demands[idx(e)]) break;
          if (witness[idx(s)] == 0) {
            witness[idx(s)] = 1;
            witness_cost += 1.0;
            ++have;
            grew = true;
          }
        }
        return grew;
      } else if constexpr (std::is_same_v<T, CipInstance>) {
        double cov = 0.0;
        for (const CipEntry& entry : p.rows[idx(e)]) {
          cov += entry.value * static_cast<double>(witness[idx(entry.col)]);
        }
        if (cov >= 1.0 - 1e-9) return false;
        const Density dens = CipDensity(p, e);
        double a = 0.0;
        for (const CipEntry& entry : p.rows[idx(e)]) {
          if (entry.col == dens.column) a = entry.value;
        }
        auto k = static_cast<std::int64_t>(std::ceil((1.0 - cov) / a - 1e-12));
        k = std::max<std::int64_t>(k, 1);
        witness[idx(dens.column)] += k;
        witness_cost += static_cast<double>(k) * p.costs[idx(dens.column)];
        return true;
      } else {
        double best = std::numeric_limits<double>::infinity();
        std::size_t open = p.num_facilities();
        for (std::size_t i = 0; i < p.num_facilities(); ++i) {
          const double d = p.distance(static_cast<ResourceId>(i), e);
          const double c = witness[i] > 0 ? d : p.open_costs[i] + d;
          if (c < best) {
            best = c;
            open = i;
          }
        }
        if (open < p.num_facilities()) witness[open] = 1;
        witness_cost += best;
        return true;
      }
    });
  }

  void ExtendFractional(ElementId e) {
    const lp::Problem& lpp = full_lp.problem;
    const SparseVector& row = lpp.rows[idx(e)];
    double lhs = 0.0;
    for (const auto& entry : row) lhs += entry.value * frac[idx(entry.index)];
    double deficit = lpp.rhs[idx(e)] - lhs;
    if (deficit <= 0.0) return;
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t k = 0; k < row.size(); ++k) {
      order.emplace_back(lpp.costs[idx(row[k].index)] / row[k].value, k);
    }
    std::sort(order.begin(), order.end());
    for (const auto& [density, k] : order) {
      const std::size_t j = idx(row[k].index);
      const double raise =
          std::min(lpp.upper[j] - frac[j], deficit / row[k].value);
      if (raise <= 0.0) continue;
      frac[j] += raise;
      frac_cost += raise * lpp.costs[j];
      deficit -= raise * row[k].value;
      if (deficit <= 1e-15) break;
    }
    exact_valid = false;
  }

  double Value(std::span<const ElementId> prefix, double est) {
    if (prefix.size() < known) {
      throw InvalidArgument("PrefixTracker: prefixes must grow");
    }
    for (; known < prefix.size(); ++known) {
      const ElementId e = prefix[known];
      const bool grew = ExtendIntegral(e);
      if (mode == EstMode::kIntegral) {
        if (grew || file.kind() == ProblemKind::kNmfl) exact_valid = false;
      } else if (covering) {
        ExtendFractional(e);
      } else {
        exact_valid = false;
      }
    }
    if (exact_valid) return exact_value;
    double upper = witness_cost;
    if (mode == EstMode::kLp && covering) upper = std::min(upper, frac_cost);
    if (upper <= est) return upper;

    ++solves;
    if (mode == EstMode::kIntegral) {
      const BaselineResult r =
          ComputeBaseline(file, BaselineKind::kIntegral, prefix, eps, limits);
      for (std::size_t j = 0; j < witness.size(); ++j) {
        witness[j] = static_cast<std::int64_t>(std::llround(r.witness[j]));
      }
      witness_cost = r.value;
      exact_value = r.value;
    } else {
      const BaselineResult r = Dispatch(file, [&](const auto& p) {
        return OptFractional(p, prefix, eps,
                             last_lp ? &*last_lp : nullptr);
      });
      if (covering) {
        frac.assign(r.witness.begin(), r.witness.end());
        frac_cost = r.value;
      }
      exact_value = r.value;
      last_lp = r;
    }
    exact_valid = true;
    return exact_value;
  }
};

PrefixTracker::PrefixTracker(const InstanceFile& file, EstMode mode,
                             double eps, SearchLimits limits)
    : impl_(std::make_unique<Impl>(file, mode, eps, limits)) {}
PrefixTracker::~PrefixTracker() = default;
PrefixTracker::PrefixTracker(PrefixTracker&&) noexcept = default;

double PrefixTracker::operator()(std::span<const ElementId> prefix,
                                 double est) {
  return impl_->Value(prefix, est);
}

std::size_t PrefixTracker::solves() const { return impl_->solves; }

PrefixBaseline PrefixTracker::AsBaseline() {
  return [this](std::span<const ElementId> prefix, double est) {
    return (*this)(prefix, est);
  };
}

// ---------------------------------------------------------------------------
// Runs.

EstMode AutoEstMode(const InstanceFile& file, const SearchLimits& limits) {
  return ExactSearchFits(file, limits) ? EstMode::kIntegral : EstMode::kLp;
}

namespace {

void CheckOutcome(const InstanceFile& file, const RunResult& result) {
  const RunState& state = result.final_state;
  for (std::size_t e = 0; e < state.arrived.size(); ++e) {
    if (!state.arrived[e]) {
      throw ContractViolation("element " + std::to_string(e) + " never arrived");
    }
  }
  if (const auto* cip = std::get_if<CipInstance>(&file.payload)) {
    const std::vector<std::int64_t> full = CipFinalize(state.bought.counts());
    for (std::size_t e = 0; e < cip->num_rows; ++e) {
      double cov = 0.0;
      for (const CipEntry& entry : cip->rows[e]) {
        cov += entry.value * static_cast<double>(full[idx(entry.col)]);
      }
      if (cov < 1.0 - 1e-9) {
        throw ContractViolation("cip: finalized solution leaves row " +
                                std::to_string(e) + " at coverage " +
                                FormatReal(cov));
      }
    }
  }
  if (const auto* fl = std::get_if<FacilityInstance>(&file.payload)) {
    for (std::size_t e = 0; e < fl->num_clients; ++e) {
      const Service& s = state.service[e];
      if (s.resource < 0 || !state.bought.has(s.resource) ||
          s.cost != fl->distance(s.resource, static_cast<ElementId>(e))) {
        throw ContractViolation("nmfl: client " + std::to_string(e) +
                                " has no valid assignment");
      }
    }
  }
}

}  // namespace

RunReport RunInstance(const InstanceFile& file, const RunOptions& options) {
  const std::unique_ptr<ProblemOracle> oracle = MakeOracle(file);
  const std::size_t n = file.num_elements();
  RunReport report;
  if (!options.order.empty()) {
    report.arrivals = options.order;
  } else if (n > 0) {
    report.arrivals = PermuteArrivals(n, options.order_seed);
  }

  RunConfig config = options.config;
  std::optional<PrefixTracker> tracker;
  PrefixBaseline baseline;
  if (config.est_mode != EstMode::kFixed) {
    tracker.emplace(file, config.est_mode, options.lp_eps, options.limits);
    baseline = tracker->AsBaseline();
  }
  report.result = Run(*oracle, report.arrivals, config, baseline);
  if (tracker) report.baseline_solves = tracker->solves();
  CheckOutcome(file, report.result);

  for (const TraceEvent& ev : report.result.trace) {
    report.backup_cost += options.accounting == Accounting::kRealized
                              ? ev.backup_cost
                              : ev.planned_backup;
    report.sampling_cost += ev.sampling_cost;
  }
  report.total_cost = report.backup_cost + report.sampling_cost;
  report.reported_cost = file.kind() == ProblemKind::kCip
                             ? 2.0 * report.total_cost
                             : report.total_cost;

  if (config.record_potential) {
    report.tau = StoppingDiagnostic(report.result.trace);
  }

  report.ratio = kNaN;
  if (options.ratio_baseline != RatioBaseline::kNone) {
    const std::vector<ElementId> all = AllElements(n);
    BaselineKind kind = BaselineKind::kLp;
    switch (options.ratio_baseline) {
      case RatioBaseline::kAuto:
        kind = ExactSearchFits(file, options.limits) ? BaselineKind::kIntegral
                                                     : BaselineKind::kLp;
        break;
      case RatioBaseline::kIntegral:
        kind = BaselineKind::kIntegral;
        break;
      case RatioBaseline::kGreedy:
        kind = BaselineKind::kGreedy;
        break;
      default:
        break;
    }
    try {
      report.baseline =
          ComputeBaseline(file, kind, all, options.lp_eps, options.limits);
    } catch (const SizeCapExceeded&) {
      if (options.ratio_baseline != RatioBaseline::kAuto) throw;
      report.baseline = ComputeBaseline(file, BaselineKind::kLp, all,
                                        options.lp_eps, options.limits);
    }
    const double opt = report.baseline->value;
    if (opt > 0.0) {
      report.ratio = report.reported_cost / opt;
    } else {
      report.ratio = report.reported_cost > 0.0
                         ? std::numeric_limits<double>::infinity()
                         : 1.0;
    }
  }
  return report;
}

std::string SummaryLine(const RunReport& report) {
  std::ostringstream out;
  out << "total_cost=" << FormatReal(report.total_cost)
      << " backup_cost=" << FormatReal(report.backup_cost)
      << " sampling_cost=" << FormatReal(report.sampling_cost)
      << " reported_cost=" << FormatReal(report.reported_cost)
      << " est_history=";
  const auto& hist = report.result.final_state.est_history;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    out << (i ? ";" : "") << FormatReal(hist[i]);
  }
  out << " phases=" << report.phase_count();
  if (report.baseline) {
    out << " baseline=" << BaselineKindName(report.baseline->kind)
        << " opt_value=" << FormatReal(report.baseline->value)
        << " ratio=" << FormatReal(report.ratio);
  }
  if (report.tau) out << " tau=" << *report.tau;
  return out.str();
}

// ---------------------------------------------------------------------------
// Sweeps.

InstanceFile SweepInstance(ProblemKind kind, std::size_t n, std::size_t m,
                           double per_element, std::uint64_t seed) {
  const double density =
      std::min(1.0, per_element / static_cast<double>(std::max<std::size_t>(m, 1)));
  switch (kind) {
    case ProblemKind::kSetCover: {
      SetCoverParams p;
      p.n = n;
      p.m = m;
      p.density = density;
      p.seed = seed;
      return GenSetCover(p);
    }
    case ProblemKind::kMulticover: {
      MulticoverParams p;
      p.n = n;
      p.m = m;
      p.density = density;
      p.seed = seed;
      return GenMulticover(p);
    }
    case ProblemKind::kCip: {
      CipParams p;
      p.n = n;
      p.m = m;
      p.density = density;
      p.a_lo = 0.2;
      p.seed = seed;
      return GenCip(p);
    }
    case ProblemKind::kNmfl: {
      NmflParams p;
      p.n_clients = n;
      p.n_facilities = m;
      p.seed = seed;
      return GenNmfl(p);
    }
  }
  throw InvalidArgument("unknown problem kind");
}

namespace {

std::string_view EstModeName(EstMode mode) {
  switch (mode) {
    case EstMode::kIntegral:
      return "integral";
    case EstMode::kLp:
      return "lp";
    case EstMode::kFixed:
      return "fixed";
  }
  return "integral";
}

RatioRecord RunTrial(const SweepSpec& spec, std::size_t c, std::size_t k) {
  const SweepCell& cell = spec.grid[c];
  RatioRecord rec;
  rec.cell = c;
  rec.n = cell.n;
  rec.m = cell.m;
  rec.trial = k;
  rec.seed = DeriveSeed(spec.seed, StreamTag::kTrial, c, k);
  rec.log_mn = std::log(static_cast<double>(cell.m) * static_cast<double>(cell.n));
  rec.ratio = rec.alg_cost = rec.opt_value = kNaN;
  try {
    const InstanceFile file =
        SweepInstance(spec.kind, cell.n, cell.m, spec.per_element, rec.seed);
    rec.instance_id = file.meta.name;
    RunOptions opts;
    opts.config.eta = spec.eta;
    opts.config.seed = DeriveSeed(rec.seed, StreamTag::kSampling);
    opts.config.est_mode = spec.est_mode ? *spec.est_mode
                                         : AutoEstMode(file, spec.limits);
    opts.config.fixed_est = spec.fixed_est;
    opts.config.record_potential = spec.record_phi;
    opts.order_seed = DeriveSeed(rec.seed, StreamTag::kArrivals);
    opts.ratio_baseline = spec.ratio_baseline;
    opts.limits = spec.limits;
    rec.est_mode = EstModeName(opts.config.est_mode);
    const RunReport report = RunInstance(file, opts);
    rec.alg_cost = report.reported_cost;
    if (report.baseline) {
      rec.opt_value = report.baseline->value;
      rec.opt_kind = report.baseline->kind;
      rec.ratio = report.ratio;
    }
    rec.phase_count = report.phase_count();
    rec.tau = report.tau;
  } catch (const std::exception& err) {
    rec.error = err.what();
    if (rec.error.empty()) rec.error = "error";
  }
  return rec;
}

double Percentile90(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(0.9 * static_cast<double>(v.size())));
  return v[std::max<std::size_t>(rank, 1) - 1];
}

std::string Clean(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ';';
  }
  return s;
}

std::string Real(double v) { return std::isnan(v) ? "" : FormatReal(v); }

}  // namespace

SweepResult Sweep(const SweepSpec& spec) {
  if (spec.grid.empty()) throw InvalidArgument("sweep: grid must be nonempty");
  if (spec.trials < 1) throw InvalidArgument("sweep: trials must be >= 1");
  const std::size_t total = spec.grid.size() * spec.trials;
  SweepResult result;
  result.records.resize(total);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      result.records[i] = RunTrial(spec, i / spec.trials, i % spec.trials);
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(spec.jobs, 1, total);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t c = 0; c < spec.grid.size(); ++c) {
    CellSummary s;
    s.cell = spec.grid[c];
    std::vector<double> ratios, normalized;
    for (std::size_t k = 0; k < spec.trials; ++k) {
      const RatioRecord& r = result.records[c * spec.trials + k];
      if (!r.ok() || std::isnan(r.ratio)) continue;
      ratios.push_back(r.ratio);
      normalized.push_back(r.ratio / r.log_mn);
    }
    s.ok_trials = ratios.size();
    if (!ratios.empty()) {
      s.mean_ratio = std::accumulate(ratios.begin(), ratios.end(), 0.0) /
                     static_cast<double>(ratios.size());
      s.mean_normalized =
          std::accumulate(normalized.begin(), normalized.end(), 0.0) /
          static_cast<double>(normalized.size());
    } else {
      s.mean_ratio = s.mean_normalized = kNaN;
    }
    s.p90_ratio = Percentile90(ratios);
    s.p90_normalized = Percentile90(normalized);
    result.cells.push_back(s);
  }
  return result;
}

void WriteSweepCsv(std::ostream& out, const SweepResult& result) {
  out << "row_type,cell,n,m,trial,instance_id,seed,est_mode,alg_cost,"
         "opt_value,opt_kind,ratio,log_mn,ratio_over_log_mn,phase_count,tau,"
         "error,p90_ratio,p90_ratio_over_log_mn\n";
  for (const RatioRecord& r : result.records) {
    out << "data," << r.cell << ',' << r.n << ',' << r.m << ',' << r.trial
        << ',' << Clean(r.instance_id) << ',' << r.seed << ',' << r.est_mode
        << ',' << Real(r.alg_cost) << ',' << Real(r.opt_value) << ','
        << (r.ok() ? BaselineKindName(r.opt_kind) : "") << ','
        << Real(r.ratio) << ',' << Real(r.log_mn) << ','
        << Real(r.ratio / r.log_mn) << ',' << r.phase_count << ',';
    if (r.tau) out << *r.tau;
    out << ',' << Clean(r.error) << ",,\n";
  }
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    const CellSummary& s = result.cells[c];
    const double log_mn = std::log(static_cast<double>(s.cell.m) *
                                   static_cast<double>(s.cell.n));
    out << "aggregate," << c << ',' << s.cell.n << ',' << s.cell.m << ','
        << s.ok_trials << ",,,,,,," << Real(s.mean_ratio) << ','
        << Real(log_mn) << ',' << Real(s.mean_normalized) << ",,,,"
        << Real(s.p90_ratio) << ',' << Real(s.p90_normalized) << '\n';
  }
}

}  // namespace rocover
