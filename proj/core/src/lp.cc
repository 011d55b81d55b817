#include "rocover/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rocover/errors.h"

namespace rocover::lp {
namespace {

std::size_t idx(ResourceId j) { return static_cast<std::size_t>(j); }

// Column-major copy of G for the transpose products.
struct Transpose {
  std::vector<std::size_t> start;
  std::vector<std::size_t> row;
  std::vector<double> value;
};

Transpose BuildTranspose(const Problem& p) {
  Transpose t;
  t.start.assign(p.num_vars + 1, 0);
  for (const auto& r : p.rows) {
    for (const auto& entry : r) ++t.start[idx(entry.index) + 1];
  }
  std::partial_sum(t.start.begin(), t.start.end(), t.start.begin());
  t.row.resize(t.start.back());
  t.value.resize(t.start.back());
  std::vector<std::size_t> fill(t.start.begin(), t.start.end() - 1);
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    for (const auto& entry : p.rows[i]) {
      const std::size_t k = fill[idx(entry.index)]++;
      t.row[k] = i;
      t.value[k] = entry.value;
    }
  }
  return t;
}

void Validate(const Problem& p) {
  if (p.costs.size() != p.num_vars || p.upper.size() != p.num_vars ||
      p.rhs.size() != p.rows.size()) {
    throw InvalidArgument("lp: inconsistent problem dimensions");
  }
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    if (!(p.costs[j] >= 0.0) || !std::isfinite(p.costs[j])) {
      throw InvalidArgument("lp: costs must be finite and nonnegative");
    }
    if (!(p.upper[j] > 0.0) || !std::isfinite(p.upper[j])) {
      throw InvalidArgument("lp: upper bounds must be finite and positive");
    }
  }
  for (const auto& r : p.rows) {
    for (const auto& entry : r) {
      if (entry.index < 0 || idx(entry.index) >= p.num_vars) {
        throw InvalidArgument("lp: row references an unknown variable");
      }
    }
  }
}

double Norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double Distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

struct Candidate {
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  std::vector<double> repaired;

  double RelativeGap() const {
    const double scale = std::max(1e-12, std::abs(lower));
    return (upper - lower) / scale;
  }
};

}  // namespace

double Solution::gap() const {
  if (value <= 0.0 && lower_bound <= 0.0) return 0.0;
  if (lower_bound <= 0.0) return std::numeric_limits<double>::infinity();
  return value / lower_bound - 1.0;
}

double Objective(const Problem& problem, std::span<const double> x) {
  double total = 0.0;
  for (std::size_t j = 0; j < problem.num_vars; ++j) {
    total += problem.costs[j] * x[j];
  }
  return total;
}

double MaxViolation(const Problem& problem, std::span<const double> x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    double lhs = 0.0;
    for (const auto& entry : problem.rows[i]) lhs += entry.value * x[idx(entry.index)];
    worst = std::max(worst, problem.rhs[i] - lhs);
  }
  return worst;
}

double LagrangianBound(const Problem& problem, std::span<const double> y) {
  std::vector<double> reduced(problem.costs);
  double bound = 0.0;
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    const double yi = std::max(0.0, y[i]);
    if (yi == 0.0) continue;
    bound += problem.rhs[i] * yi;
    for (const auto& entry : problem.rows[i]) {
      reduced[idx(entry.index)] -= entry.value * yi;
    }
  }
  for (std::size_t j = 0; j < problem.num_vars; ++j) {
    if (reduced[j] < 0.0) bound += reduced[j] * problem.upper[j];
  }
  return bound;
}

void RepairCovering(const Problem& problem, std::vector<double>& x) {
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    const auto& r = problem.rows[i];
    double lhs = 0.0;
    for (const auto& entry : r) lhs += entry.value * x[idx(entry.index)];
    double deficit = problem.rhs[i] - lhs;
    if (deficit <= 0.0) continue;
    order.clear();
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k].value > 0.0) {
        order.emplace_back(problem.costs[idx(r[k].index)] / r[k].value, k);
      }
    }
    std::sort(order.begin(), order.end());
    for (const auto& [density, k] : order) {
      const std::size_t j = idx(r[k].index);
      const double room = problem.upper[j] - x[j];
      if (room <= 0.0) continue;
      const double raise = std::min(room, deficit / r[k].value);
      x[j] += raise;
      deficit -= raise * r[k].value;
      if (deficit <= 0.0) break;
    }
    if (deficit > 1e-9 * std::max(1.0, std::abs(problem.rhs[i]))) {
      throw InfeasibleInstance("lp: row " + std::to_string(i) +
                               " cannot be satisfied within the box");
    }
  }
}

Solution Solve(const Problem& problem, const Repair& repair,
               const Options& options, const Solution* warm) {
  Validate(problem);
  if (!(options.eps > 0.0)) throw InvalidArgument("lp: eps must be positive");
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.rows.size();
  const Transpose gt = BuildTranspose(problem);

  std::vector<double> col_norm(n, 0.0), row_norm(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& entry : problem.rows[i]) {
      row_norm[i] += std::abs(entry.value);
      col_norm[idx(entry.index)] += std::abs(entry.value);
    }
  }

  std::vector<double> x(n, 0.0), y(m, 0.0);
  if (warm != nullptr) {
    for (std::size_t j = 0; j < std::min(n, warm->x.size()); ++j) {
      x[j] = std::clamp(warm->x[j], 0.0, problem.upper[j]);
    }
    for (std::size_t i = 0; i < std::min(m, warm->duals.size()); ++i) {
      y[i] = std::max(0.0, warm->duals[i]);
    }
  }

  const auto evaluate = [&](std::span<const double> px,
                            std::span<const double> py) {
    Candidate cand;
    cand.repaired.assign(px.begin(), px.end());
    repair(cand.repaired);
    cand.upper = Objective(problem, cand.repaired);
    cand.lower = LagrangianBound(problem, py);
    return cand;
  };

  Solution best;
  best.x.assign(n, 0.0);
  best.value = std::numeric_limits<double>::infinity();
  best.lower_bound = -std::numeric_limits<double>::infinity();
  std::vector<double> best_y(y);
  const auto absorb = [&](const Candidate& cand, std::span<const double> py) {
    if (cand.upper < best.value) {
      best.value = cand.upper;
      best.x = cand.repaired;
    }
    if (cand.lower > best.lower_bound) {
      best.lower_bound = cand.lower;
      best_y.assign(py.begin(), py.end());
    }
  };
  const auto done = [&] {
    if (best.value <= 1e-12 && best.lower_bound >= -1e-12) return true;
    return best.lower_bound > 0.0 &&
           best.value <= (1.0 + options.eps) * best.lower_bound;
  };

  absorb(evaluate(x, y), y);
  std::size_t iter = 0;
  if (m > 0 && !done()) {
    const double c_norm = Norm(problem.costs);
    const double h_norm = Norm(problem.rhs);
    double weight = (c_norm > 0.0 && h_norm > 0.0) ? c_norm / h_norm : 1.0;
    std::vector<double> tau(n), sigma(m);
    const auto set_steps = [&] {
      for (std::size_t j = 0; j < n; ++j) {
        tau[j] = col_norm[j] > 0.0 ? 0.95 / (weight * col_norm[j]) : 1.0;
      }
      for (std::size_t i = 0; i < m; ++i) {
        sigma[i] = row_norm[i] > 0.0 ? 0.95 * weight / row_norm[i] : 0.0;
      }
    };
    set_steps();

    std::vector<double> x_new(n), x_bar(n, 0.0), y_bar(m, 0.0);
    std::vector<double> x_anchor(x), y_anchor(y);
    std::vector<double> gty(n), ext(n);
    double anchor_gap = evaluate(x, y).RelativeGap();
    std::size_t since_restart = 0;

    while (iter < options.max_iters) {
      // x step: descend on c - G^T y within the box.
      for (std::size_t j = 0; j < n; ++j) {
        double g = problem.costs[j];
        for (std::size_t k = gt.start[j]; k < gt.start[j + 1]; ++k) {
          g -= gt.value[k] * y[gt.row[k]];
        }
        x_new[j] = std::clamp(x[j] - tau[j] * g, 0.0, problem.upper[j]);
        ext[j] = 2.0 * x_new[j] - x[j];
      }
      // y step on the extrapolated point.
      for (std::size_t i = 0; i < m; ++i) {
        double lhs = 0.0;
        for (const auto& entry : problem.rows[i]) {
          lhs += entry.value * ext[idx(entry.index)];
        }
        y[i] = std::max(0.0, y[i] + sigma[i] * (problem.rhs[i] - lhs));
      }
      x.swap(x_new);
      ++iter;
      ++since_restart;
      const double w = 1.0 / static_cast<double>(since_restart);
      for (std::size_t j = 0; j < n; ++j) x_bar[j] += w * (x[j] - x_bar[j]);
      for (std::size_t i = 0; i < m; ++i) y_bar[i] += w * (y[i] - y_bar[i]);

      if (iter % options.check_every != 0) continue;
      const Candidate current = evaluate(x, y);
      const Candidate average = evaluate(x_bar, y_bar);
      absorb(current, y);
      absorb(average, y_bar);
      if (done()) break;

      const bool use_average = average.RelativeGap() < current.RelativeGap();
      const double cand_gap =
          use_average ? average.RelativeGap() : current.RelativeGap();
      const bool restart = cand_gap <= 0.2 * anchor_gap ||
                           since_restart >= std::max<std::size_t>(
                                                512, iter / 3);
      if (!restart) continue;
      if (use_average) {
        x = x_bar;
        y = y_bar;
      }
      const double dx = Distance(x, x_anchor);
      const double dy = Distance(y, y_anchor);
      if (dx > 1e-10 && dy > 1e-10) {
        weight = std::exp(0.5 * std::log(dy / dx) + 0.5 * std::log(weight));
        set_steps();
      }
      x_anchor = x;
      y_anchor = y;
      x_bar = x;
      y_bar = y;
      since_restart = 0;
      anchor_gap = cand_gap;
    }
  }

  best.iterations = iter;
  best.duals = std::move(best_y);
  best.converged = done();
  best.lower_bound = std::max(0.0, best.lower_bound);
  if (best.lower_bound > best.value) best.lower_bound = best.value;
  return best;
}

}  // namespace rocover::lp
