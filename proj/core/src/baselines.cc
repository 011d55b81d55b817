#include "rocover/baselines.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "rocover/errors.h"

namespace rocover {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCoverTol = 1e-9;

std::size_t idx(std::int64_t v) { return static_cast<std::size_t>(v); }

// Integer covering program min c.x, sum_j a_ij x_j >= h_i, x_j in
// {0..cap_j}, solved by row branching: for the chosen uncovered row, branch
// k raises its k-th column by one while columns 1..k-1 stay frozen at their
// current value. Every solution is reached exactly once.
class CoverSearch {
 public:
  struct Row {
    std::vector<std::pair<std::size_t, double>> cols;  // (column, a_ij > 0)
    double target = 1.0;
  };

  CoverSearch(std::vector<double> costs, std::vector<std::int64_t> caps,
              std::vector<Row> rows, std::uint64_t max_nodes)
      : costs_(std::move(costs)),
        caps_(std::move(caps)),
        rows_(std::move(rows)),
        max_nodes_(max_nodes) {
    col_rows_.assign(costs_.size(), {});
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [c, a] : rows_[r].cols) col_rows_[c].emplace_back(r, a);
    }
    x_.assign(costs_.size(), 0);
    frozen_.assign(costs_.size(), 0);
    mark_.assign(costs_.size(), 0);
    cover_.assign(rows_.size(), 0.0);
  }

  BaselineResult Solve() {
    Greedy();
    Dfs(0.0);
    BaselineResult result;
    result.kind = BaselineKind::kIntegral;
    result.value = best_;
    result.lower_bound = best_;
    result.witness.assign(best_x_.begin(), best_x_.end());
    return result;
  }

 private:
  bool Uncovered(std::size_t r) const {
    return cover_[r] < rows_[r].target - kCoverTol;
  }
  bool Available(std::size_t c) const { return !frozen_[c] && x_[c] < caps_[c]; }

  void Add(std::size_t c, int delta) {
    x_[c] += delta;
    for (const auto& [r, a] : col_rows_[c]) cover_[r] += delta * a;
  }

  // Density greedy for an initial incumbent.
  void Greedy() {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      while (Uncovered(r)) {
        std::size_t pick = costs_.size();
        double best_density = kInf;
        for (const auto& [c, a] : rows_[r].cols) {
          if (x_[c] < caps_[c] && costs_[c] / a < best_density) {
            best_density = costs_[c] / a;
            pick = c;
          }
        }
        if (pick == costs_.size()) {
          throw InfeasibleInstance("opt_integral: row " + std::to_string(r) +
                                   " cannot be covered");
        }
        Add(pick, 1);
      }
    }
    best_x_ = x_;
    best_ = 0.0;
    for (std::size_t c = 0; c < costs_.size(); ++c) best_ += costs_[c] * x_[c];
    for (std::size_t c = 0; c < costs_.size(); ++c) {
      if (x_[c] != 0) Add(c, -static_cast<int>(x_[c]));
    }
  }

  // Sum of single-row bounds over rows whose available columns are disjoint.
  double PackingBound(std::vector<std::pair<double, std::size_t>>& bounds) {
    std::sort(bounds.begin(), bounds.end(), std::greater<>());
    ++stamp_;
    double total = 0.0;
    for (const auto& [b, r] : bounds) {
      bool disjoint = true;
      for (const auto& [c, a] : rows_[r].cols) {
        if (Available(c) && mark_[c] == stamp_) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      for (const auto& [c, a] : rows_[r].cols) {
        if (Available(c)) mark_[c] = stamp_;
      }
      total += b;
    }
    return total;
  }

  void Dfs(double cost) {
    if (++nodes_ > max_nodes_) {
      throw SizeCapExceeded("opt_integral: search exceeded " +
                            std::to_string(max_nodes_) +
                            " nodes; use --est-mode lp for this size");
    }
    std::vector<std::pair<double, std::size_t>> bounds;
    std::size_t branch_row = rows_.size();
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!Uncovered(r)) continue;
      const double residual = rows_[r].target - cover_[r];
      double capacity = 0.0;
      double density = kInf;
      std::size_t options = 0;
      for (const auto& [c, a] : rows_[r].cols) {
        if (!Available(c)) continue;
        ++options;
        capacity += a * static_cast<double>(caps_[c] - x_[c]);
        density = std::min(density, costs_[c] / a);
      }
      if (capacity < residual - kCoverTol) return;  // dead end
      bounds.emplace_back(residual * density, r);
      if (options < fewest) {
        fewest = options;
        branch_row = r;
      }
    }
    if (branch_row == rows_.size()) {
      if (cost < best_ - 1e-12) {
        best_ = cost;
        best_x_ = x_;
      }
      return;
    }
    if (cost + PackingBound(bounds) >= best_ - 1e-12) return;

    std::vector<std::pair<double, std::size_t>> order;
    for (const auto& [c, a] : rows_[branch_row].cols) {
      if (Available(c)) order.emplace_back(costs_[c] / a, c);
    }
    std::sort(order.begin(), order.end());
    std::vector<std::size_t> froze;
    for (const auto& [density, c] : order) {
      Add(c, 1);
      Dfs(cost + costs_[c]);
      Add(c, -1);
      frozen_[c] = 1;
      froze.push_back(c);
    }
    for (std::size_t c : froze) frozen_[c] = 0;
  }

  std::vector<double> costs_;
  std::vector<std::int64_t> caps_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::pair<std::size_t, double>>> col_rows_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<std::int64_t> x_;
  std::vector<char> frozen_;
  std::vector<std::uint64_t> mark_;
  std::uint64_t stamp_ = 0;
  std::vector<double> cover_;
  double best_ = kInf;
  std::vector<std::int64_t> best_x_;
};

void CheckSubset(std::span<const ElementId> subset, std::size_t n) {
  std::vector<char> seen(n, 0);
  for (ElementId e : subset) {
    if (e < 0 || idx(e) >= n) {
      throw InvalidArgument("element subset index out of range");
    }
    if (seen[idx(e)]) throw InvalidArgument("element subset has duplicates");
    seen[idx(e)] = 1;
  }
}

void CheckColumnCap(std::size_t used, const SearchLimits& limits) {
  if (used > limits.max_resources) {
    throw SizeCapExceeded("opt_integral: " + std::to_string(used) +
                          " candidate resources exceed the exact-search cap "
                          "of " + std::to_string(limits.max_resources) +
                          "; use --est-mode lp");
  }
}

BaselineResult SetSystemOpt(const SetSystem& sys,
                            std::span<const ElementId> subset,
                            const std::vector<int>* demands,
                            const SearchLimits& limits) {
  CheckSubset(subset, sys.num_elements);
  std::vector<char> used(sys.num_sets(), 0);
  std::vector<CoverSearch::Row> rows;
  for (ElementId e : subset) {
    CoverSearch::Row row;
    row.target = demands ? (*demands)[idx(e)] : 1.0;
    for (ResourceId s : sys.sets_of[idx(e)]) {
      row.cols.emplace_back(idx(s), 1.0);
      used[idx(s)] = 1;
    }
    rows.push_back(std::move(row));
  }
  CheckColumnCap(std::count(used.begin(), used.end(), 1), limits);
  CoverSearch search(sys.costs, std::vector<std::int64_t>(sys.num_sets(), 1),
                     std::move(rows), limits.max_nodes);
  return search.Solve();
}

}  // namespace

std::string_view BaselineKindName(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kIntegral:
      return "integral";
    case BaselineKind::kLp:
      return "lp";
    case BaselineKind::kGreedy:
      return "greedy";
  }
  return "integral";
}

void CheckLpEps(double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw InvalidArgument("opt_fractional: eps must lie in (0, 0.5]");
  }
}

BaselineResult OptIntegral(const SetSystem& sys,
                           std::span<const ElementId> subset,
                           const SearchLimits& limits) {
  return SetSystemOpt(sys, subset, nullptr, limits);
}

BaselineResult OptIntegral(const MulticoverInstance& inst,
                           std::span<const ElementId> subset,
                           const SearchLimits& limits) {
  return SetSystemOpt(inst.system, subset, &inst.demands, limits);
}

BaselineResult OptIntegral(const CipInstance& inst,
                           std::span<const ElementId> subset,
                           const SearchLimits& limits) {
  CheckSubset(subset, inst.num_rows);
  const std::size_t m = inst.num_cols();
  std::vector<double> min_a(m, kInf);
  std::vector<CoverSearch::Row> rows;
  for (ElementId e : subset) {
    CoverSearch::Row row;
    for (const CipEntry& entry : inst.rows[idx(e)]) {
      row.cols.emplace_back(idx(entry.col), entry.value);
      min_a[idx(entry.col)] = std::min(min_a[idx(entry.col)], entry.value);
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::int64_t> caps(m, 0);
  std::size_t used = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (std::isfinite(min_a[j])) {
      caps[j] = static_cast<std::int64_t>(std::ceil(1.0 / min_a[j] - 1e-12));
      ++used;
    }
  }
  CheckColumnCap(used, limits);
  CoverSearch search(inst.costs, std::move(caps), std::move(rows),
                     limits.max_nodes);
  return search.Solve();
}

namespace {

// Include/exclude search over facilities in index order. A node's bound is
// the opening cost so far plus, per client, the distance to the nearest
// facility that is open or still undecided.
class FacilitySearch {
 public:
  FacilitySearch(const FacilityInstance& inst, std::span<const ElementId> subset,
                 std::uint64_t max_nodes)
      : inst_(inst), clients_(subset.begin(), subset.end()),
        max_nodes_(max_nodes) {
    const std::size_t f = inst.num_facilities();
    const std::size_t k = clients_.size();
    suffix_.assign((f + 1) * k, kInf);
    for (std::size_t i = f; i-- > 0;) {
      for (std::size_t c = 0; c < k; ++c) {
        suffix_[i * k + c] =
            std::min(suffix_[(i + 1) * k + c],
                     inst.distance(static_cast<ResourceId>(i), clients_[c]));
      }
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (!std::isfinite(suffix_[c])) {
        throw InfeasibleInstance("opt_integral: client " +
                                 std::to_string(clients_[c]) +
                                 " has no reachable facility");
      }
    }
    open_.assign(f, 0);
  }

  BaselineResult Solve() {
    const std::size_t k = clients_.size();
    BaselineResult result;
    result.kind = BaselineKind::kIntegral;
    result.witness.assign(inst_.num_facilities(), 0.0);
    if (k == 0) return result;
    std::vector<double> nearest(k, kInf);
    Dfs(0, 0.0, nearest);
    result.value = best_;
    result.lower_bound = best_;
    for (std::size_t i = 0; i < best_open_.size(); ++i) {
      result.witness[i] = best_open_[i];
    }
    return result;
  }

 private:
  void Dfs(std::size_t i, double open_cost, const std::vector<double>& nearest) {
    if (++nodes_ > max_nodes_) {
      throw SizeCapExceeded("opt_integral: facility search exceeded " +
                            std::to_string(max_nodes_) + " nodes");
    }
    const std::size_t k = clients_.size();
    double bound = open_cost;
    for (std::size_t c = 0; c < k; ++c) {
      bound += std::min(nearest[c], suffix_[i * k + c]);
    }
    if (bound >= best_ - 1e-12) return;
    if (i == inst_.num_facilities()) {
      best_ = bound;
      best_open_ = open_;
      return;
    }
    std::vector<double> with(nearest);
    for (std::size_t c = 0; c < k; ++c) {
      with[c] = std::min(with[c],
                         inst_.distance(static_cast<ResourceId>(i), clients_[c]));
    }
    open_[i] = 1;
    Dfs(i + 1, open_cost + inst_.open_costs[i], with);
    open_[i] = 0;
    Dfs(i + 1, open_cost, nearest);
  }

  const FacilityInstance& inst_;
  std::vector<ElementId> clients_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<double> suffix_;
  std::vector<char> open_;
  std::vector<char> best_open_;
  double best_ = kInf;
};

}  // namespace

BaselineResult OptIntegral(const FacilityInstance& inst,
                           std::span<const ElementId> subset,
                           const SearchLimits& limits) {
  CheckSubset(subset, inst.num_clients);
  if (inst.num_facilities() > limits.max_facilities) {
    throw SizeCapExceeded("opt_integral: " +
                          std::to_string(inst.num_facilities()) +
                          " facilities exceed the exact-search cap of " +
                          std::to_string(limits.max_facilities) +
                          "; use --est-mode lp");
  }
  FacilitySearch search(inst, subset, limits.max_nodes);
  return search.Solve();
}

// ---------------------------------------------------------------------------
// LP relaxations.

namespace {

LpModel SetSystemLp(const SetSystem& sys, std::span<const ElementId> subset,
                    const std::vector<int>* demands) {
  CheckSubset(subset, sys.num_elements);
  LpModel model;
  lp::Problem& p = model.problem;
  p.num_vars = sys.num_sets();
  p.costs = sys.costs;
  p.upper.assign(p.num_vars, 1.0);
  for (ElementId e : subset) {
    SparseVector row;
    for (ResourceId s : sys.sets_of[idx(e)]) row.push_back({s, 1.0});
    p.rows.push_back(std::move(row));
    p.rhs.push_back(demands ? (*demands)[idx(e)] : 1.0);
  }
  return model;
}

}  // namespace

LpModel FractionalLp(const SetSystem& sys, std::span<const ElementId> subset) {
  return SetSystemLp(sys, subset, nullptr);
}

LpModel FractionalLp(const MulticoverInstance& inst,
                     std::span<const ElementId> subset) {
  return SetSystemLp(inst.system, subset, &inst.demands);
}

LpModel FractionalLp(const CipInstance& inst,
                     std::span<const ElementId> subset) {
  CheckSubset(subset, inst.num_rows);
  LpModel model;
  lp::Problem& p = model.problem;
  p.num_vars = inst.num_cols();
  p.costs = inst.costs;
  p.upper.assign(p.num_vars, 1.0);
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    double min_a = kInf;
    for (const auto& [e, a] : inst.columns[j]) min_a = std::min(min_a, a);
    if (std::isfinite(min_a)) p.upper[j] = 1.0 / min_a;
  }
  for (ElementId e : subset) {
    SparseVector row;
    for (const CipEntry& entry : inst.rows[idx(e)]) {
      row.push_back({entry.col, entry.value});
    }
    p.rows.push_back(std::move(row));
    p.rhs.push_back(1.0);
  }
  return model;
}

LpModel FractionalLp(const FacilityInstance& inst,
                     std::span<const ElementId> subset) {
  CheckSubset(subset, inst.num_clients);
  const std::size_t f = inst.num_facilities();
  LpModel model;
  model.num_facilities = f;
  lp::Problem& p = model.problem;
  p.num_vars = f;
  p.costs = inst.open_costs;
  for (ElementId e : subset) {
    SparseVector cover;
    std::vector<std::pair<std::size_t, double>> vars;
    for (std::size_t i = 0; i < f; ++i) {
      const double d = inst.distance(static_cast<ResourceId>(i), e);
      if (!std::isfinite(d)) continue;
      const auto var = static_cast<ResourceId>(p.num_vars++);
      p.costs.push_back(d);
      cover.push_back({var, 1.0});
      vars.emplace_back(static_cast<std::size_t>(var), d);
    }
    if (vars.empty()) {
      throw InfeasibleInstance("nmfl: client " + std::to_string(e) +
                               " has no reachable facility");
    }
    p.rows.push_back(std::move(cover));
    p.rhs.push_back(1.0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < f; ++i) {
      if (!std::isfinite(inst.distance(static_cast<ResourceId>(i), e))) continue;
      p.rows.push_back({{static_cast<ResourceId>(i), 1.0},
                        {static_cast<ResourceId>(vars[k].first), -1.0}});
      p.rhs.push_back(0.0);
      ++k;
    }
    std::stable_sort(vars.begin(), vars.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    model.client_vars.push_back(std::move(vars));
  }
  p.upper.assign(p.num_vars, 1.0);
  return model;
}

void RepairLp(const LpModel& model, std::vector<double>& x) {
  if (model.client_vars.empty() && model.num_facilities == 0) {
    lp::RepairCovering(model.problem, x);
    return;
  }
  // Facility location: route each client's deficit to its nearest
  // facilities, then open every facility as far as it is used.
  for (const auto& vars : model.client_vars) {
    double mass = 0.0;
    for (const auto& [var, d] : vars) mass += x[var];
    double deficit = 1.0 - mass;
    for (const auto& [var, d] : vars) {
      if (deficit <= 0.0) break;
      const double raise = std::min(1.0 - x[var], deficit);
      x[var] += raise;
      deficit -= raise;
    }
  }
  const auto& rows = model.problem.rows;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != 2 || rows[r][1].value != -1.0) continue;
    const auto y = static_cast<std::size_t>(rows[r][0].index);
    const auto xv = static_cast<std::size_t>(rows[r][1].index);
    x[y] = std::max(x[y], x[xv]);
  }
}

BaselineResult SolveLp(const LpModel& model, double eps,
                       const BaselineResult* warm) {
  CheckLpEps(eps);
  lp::Options options;
  options.eps = eps;
  lp::Solution seed;
  if (warm != nullptr) {
    seed.x = warm->witness;
    seed.duals = warm->duals;
  }
  const lp::Solution sol = lp::Solve(
      model.problem, [&model](std::vector<double>& x) { RepairLp(model, x); },
      options, warm != nullptr ? &seed : nullptr);
  BaselineResult result;
  result.kind = BaselineKind::kLp;
  result.value = sol.value;
  result.lower_bound = sol.lower_bound;
  result.witness = sol.x;
  result.duals = sol.duals;
  result.exact = false;
  result.eps = sol.gap();
  return result;
}

// ---------------------------------------------------------------------------
// Greedy.

namespace {

BaselineResult SetSystemGreedy(const SetSystem& sys,
                               std::span<const ElementId> subset,
                               const std::vector<int>* demands) {
  CheckSubset(subset, sys.num_elements);
  std::vector<int> residual(sys.num_elements, 0);
  std::size_t open = 0;
  for (ElementId e : subset) {
    residual[idx(e)] = demands ? (*demands)[idx(e)] : 1;
    open += static_cast<std::size_t>(residual[idx(e)]);
  }
  BaselineResult result;
  result.kind = BaselineKind::kGreedy;
  result.exact = false;
  result.witness.assign(sys.num_sets(), 0.0);
  while (open > 0) {
    std::size_t pick = sys.num_sets();
    double best = kInf;
    for (std::size_t s = 0; s < sys.num_sets(); ++s) {
      if (result.witness[s] > 0.0) continue;
      std::size_t gain = 0;
      for (ElementId e : sys.sets[s]) gain += residual[idx(e)] > 0 ? 1 : 0;
      if (gain == 0) continue;
      const double ratio = sys.costs[s] / static_cast<double>(gain);
      if (ratio < best) {
        best = ratio;
        pick = s;
      }
    }
    if (pick == sys.num_sets()) {
      throw InfeasibleInstance("greedy_cover: some demand cannot be met");
    }
    result.witness[pick] = 1.0;
    result.value += sys.costs[pick];
    for (ElementId e : sys.sets[pick]) {
      if (residual[idx(e)] > 0) {
        --residual[idx(e)];
        --open;
      }
    }
  }
  result.lower_bound = 0.0;
  return result;
}

}  // namespace

BaselineResult GreedyCover(const SetSystem& sys,
                           std::span<const ElementId> subset) {
  return SetSystemGreedy(sys, subset, nullptr);
}

BaselineResult GreedyCover(const MulticoverInstance& inst,
                           std::span<const ElementId> subset) {
  return SetSystemGreedy(inst.system, subset, &inst.demands);
}

// ---------------------------------------------------------------------------
// Probabilistic inequalities.

double ClaimB1Slack(std::span<const double> a) {
  double product = 1.0;
  double sum = 0.0;
  for (double v : a) {
    product *= 1.0 - v;
    sum += v;
  }
  return (1.0 - product) - (1.0 - 1.0 / std::numbers::e) * std::min(1.0, sum);
}

ClaimB1Report ValidateClaimB1(std::size_t samples, SplitMix64& rng) {
  ClaimB1Report report;
  report.samples = samples;
  report.min_slack = kInf;
  std::vector<double> a;
  for (std::size_t s = 0; s < samples; ++s) {
    a.resize(static_cast<std::size_t>(rng.UniformInt(1, 20)));
    for (double& v : a) v = rng.Uniform();
    const double slack = ClaimB1Slack(a);
    // Rounding in the product is far below 1e-12 for 20 terms.
    if (slack < -1e-12) ++report.violations;
    if (slack < report.min_slack) {
      report.min_slack = slack;
      report.worst = a;
    }
  }
  return report;
}

FactB2Estimate EstimateFactB2(const FactB2Config& config,
                              std::size_t mc_samples, SplitMix64& rng) {
  if (config.pi.size() != config.lambda.size()) {
    throw InvalidArgument("fact_b2: pi and lambda must have equal length");
  }
  if (mc_samples < 2) throw InvalidArgument("fact_b2: need >= 2 samples");
  FactB2Estimate est;
  for (std::size_t j = 0; j < config.pi.size(); ++j) {
    est.expected_lambda += config.pi[j] * config.lambda[j];
  }
  est.bound = std::min(est.expected_lambda, config.cap) / 168.0;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t s = 0; s < mc_samples; ++s) {
    double total = 0.0;
    for (std::size_t j = 0; j < config.pi.size() && total < config.cap; ++j) {
      if (rng.Uniform() < config.pi[j]) total += config.lambda[j];
    }
    const double v = std::min(total, config.cap);
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(mc_samples);
  est.mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * est.mean * est.mean) / (n - 1));
  est.std_error = std::sqrt(var / n);
  return est;
}

FactB2Report ValidateFactB2(std::size_t configs, std::size_t mc_samples,
                            SplitMix64& rng) {
  FactB2Report report;
  report.configs = configs;
  report.min_ratio = kInf;
  const double cap_lo = 1.0 / (std::numbers::e - 1.0);
  for (std::size_t k = 0; k < configs; ++k) {
    FactB2Config config;
    const auto len = static_cast<std::size_t>(rng.UniformInt(1, 20));
    config.pi.resize(len);
    config.lambda.resize(len);
    for (std::size_t j = 0; j < len; ++j) {
      config.pi[j] = rng.Uniform();
      config.lambda[j] = rng.Uniform();
    }
    config.cap = rng.Uniform(cap_lo, 3.0);
    const FactB2Estimate est = EstimateFactB2(config, mc_samples, rng);
    if (!est.holds()) ++report.violations;
    const double ratio =
        est.bound > 0.0 ? (est.mean + 3.0 * est.std_error) / est.bound : kInf;
    if (ratio < report.min_ratio) {
      report.min_ratio = ratio;
      report.worst = config;
    }
  }
  return report;
}

}  // namespace rocover
