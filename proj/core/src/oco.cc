#include "rocover/oco.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>

#include "rocover/errors.h"

namespace rocover::oco {
namespace {

// Tolerance on the scaled-gradient range check.
constexpr double kGradientSlack = 1e-9;

void ApplyFloor(std::vector<double>& coords) {
  for (double& x : coords) x = std::max(x, kPositivityFloor);
}

// Guards against the sum landing a few ulps above 1 after rounding.
void ShrinkIntoSimplex(std::vector<double>& coords) {
  const double sum = std::accumulate(coords.begin(), coords.end(), 0.0);
  if (sum > 1.0) {
    for (double& x : coords) x /= sum;
  }
}

void CheckProjectionArgs(std::span<const double> point,
                         std::span<const double> caps) {
  if (point.size() != caps.size()) {
    throw InvalidArgument("BregmanProject: point and caps differ in length");
  }
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!(point[i] > 0.0) || !(caps[i] > 0.0)) {
      throw InvalidArgument("BregmanProject: coordinates and caps must be > 0");
    }
  }
}

}  // namespace

OcoState InitState(std::size_t dim, std::span<const double> costs, double scale,
                   double eta) {
  if (dim == 0) throw InvalidArgument("InitState: dim must be >= 1");
  if (costs.size() != dim) {
    throw InvalidArgument("InitState: costs must have length dim");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("InitState: scale must be positive and finite");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw InvalidArgument("InitState: eta must lie in (0, 1]");
  }
  OcoState state;
  state.eta = eta;
  state.dim = dim;
  state.scale = scale;
  state.costs.assign(costs.begin(), costs.end());
  state.point.caps.resize(dim);
  state.point.coords.resize(dim);
  const double uniform = 1.0 / static_cast<double>(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!(costs[i] > 0.0) || !std::isfinite(costs[i])) {
      throw InvalidArgument("InitState: costs must be positive and finite");
    }
    const double cap = std::min(1.0, costs[i] / scale);
    state.point.caps[i] = cap;
    state.point.coords[i] =
        std::max(std::min(uniform, cap * (1.0 - kFeasibilityEps)),
                 kPositivityFloor);
  }
  return state;
}

double UnnormalizedKl(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw InvalidArgument("UnnormalizedKl: vectors differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(q[i] > 0.0)) {
      throw InvalidArgument("UnnormalizedKl: q must be strictly positive");
    }
    if (p[i] < 0.0) {
      throw InvalidArgument("UnnormalizedKl: p must be nonnegative");
    }
    const double log_term = p[i] > 0.0 ? p[i] * std::log(p[i] / q[i]) : 0.0;
    total += log_term - p[i] + q[i];
  }
  return std::max(total, 0.0);
}

CappedSimplexPoint BregmanProject(std::span<const double> point,
                                  std::span<const double> caps) {
  CheckProjectionArgs(point, caps);
  const std::size_t d = point.size();
  CappedSimplexPoint out;
  out.caps.assign(caps.begin(), caps.end());
  out.coords.resize(d);

  double clipped_sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    out.coords[i] = std::min(caps[i], point[i]);
    clipped_sum += out.coords[i];
  }
  if (clipped_sum <= 1.0) {
    ApplyFloor(out.coords);
    return out;
  }

  // Coordinate i saturates once s >= caps_i / point_i.
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> breakpoint(d);
  for (std::size_t i = 0; i < d; ++i) breakpoint[i] = caps[i] / point[i];
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return breakpoint[a] < breakpoint[b] ||
           (breakpoint[a] == breakpoint[b] && a < b);
  });
  // free_mass[k] = sum of point over order[k..d).
  std::vector<double> free_mass(d + 1, 0.0);
  for (std::size_t k = d; k-- > 0;) {
    free_mass[k] = free_mass[k + 1] + point[order[k]];
  }

  double capped = 0.0;
  double s = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double candidate = (1.0 - capped) / free_mass[k];
    if (candidate <= breakpoint[order[k]]) {
      s = candidate;
      break;
    }
    capped += caps[order[k]];
  }
  s = std::clamp(s, 0.0, 1.0);
  for (std::size_t i = 0; i < d; ++i) {
    out.coords[i] = std::min(caps[i], point[i] * s);
  }
  ShrinkIntoSimplex(out.coords);
  ApplyFloor(out.coords);
  return out;
}

CappedSimplexPoint BregmanProjectBisection(std::span<const double> point,
                                           std::span<const double> caps) {
  CheckProjectionArgs(point, caps);
  const std::size_t d = point.size();
  auto total_at = [&](double lambda) {
    const double s = std::exp(-lambda);
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) sum += std::min(caps[i], point[i] * s);
    return sum;
  };
  double lambda = 0.0;
  if (total_at(0.0) > 1.0) {
    const double mass = std::accumulate(point.begin(), point.end(), 0.0);
    double lo = 0.0;
    double hi = std::log(mass) + 30.0;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double sum = total_at(mid);
      if (sum > 1.0) {
        lo = mid;
      } else {
        hi = mid;
        if (1.0 - sum <= 1e-12) break;
      }
    }
    lambda = hi;
  }
  CappedSimplexPoint out;
  out.caps.assign(caps.begin(), caps.end());
  out.coords.resize(d);
  const double s = std::exp(-lambda);
  for (std::size_t i = 0; i < d; ++i) {
    out.coords[i] = std::min(caps[i], point[i] * s);
  }
  ShrinkIntoSimplex(out.coords);
  ApplyFloor(out.coords);
  return out;
}

namespace {

double ScaledGradient(const OcoState& state, std::size_t i, double value) {
  const double g = value * state.scale / state.costs[i];
  if (!(g >= -kGradientSlack && g <= 1.0 + kGradientSlack)) {
    throw InvalidArgument("Step: scaled gradient coordinate " +
                          std::to_string(i) + " = " + std::to_string(g) +
                          " outside [0, 1]");
  }
  return std::clamp(g, 0.0, 1.0);
}

}  // namespace

OcoState Step(OcoState state, const GradientEstimate& grad) {
  if (grad.values.size() != state.dim) {
    throw InvalidArgument("Step: gradient has the wrong dimension");
  }
  SparseVector sparse;
  for (std::size_t i = 0; i < state.dim; ++i) {
    if (grad.values[i] != 0.0) {
      sparse.push_back({static_cast<ResourceId>(i), grad.values[i]});
    }
  }
  StepInPlace(state, sparse);
  return state;
}

void StepInPlace(OcoState& state, const SparseVector& grad) {
  if (grad.empty()) return;
  std::vector<double> tilde = state.point.coords;
  for (const SparseEntry& entry : grad) {
    if (entry.index < 0 || static_cast<std::size_t>(entry.index) >= state.dim) {
      throw InvalidArgument("Step: gradient index out of range");
    }
    const std::size_t i = static_cast<std::size_t>(entry.index);
    const double g = ScaledGradient(state, i, entry.value);
    tilde[i] *= std::exp(state.eta * g);
  }
  state.point = BregmanProject(tilde, state.point.caps);
}

std::vector<double> Play(const OcoState& state) {
  std::vector<double> y(state.dim);
  for (std::size_t i = 0; i < state.dim; ++i) {
    y[i] = std::clamp(state.point.coords[i] * state.scale / state.costs[i], 0.0,
                      1.0);
  }
  return y;
}

bool IsFeasible(const CappedSimplexPoint& point) {
  if (point.coords.size() != point.caps.size()) return false;
  double sum = 0.0;
  for (std::size_t i = 0; i < point.coords.size(); ++i) {
    const double x = point.coords[i];
    if (!(x > 0.0) || x > point.caps[i]) return false;
    sum += x;
  }
  return sum <= 1.0 + kFeasibilityEps;
}

void WriteIterateRows(std::ostream& out, std::size_t t, const OcoState& state) {
  char buf[64];
  for (std::size_t i = 0; i < state.dim; ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g", state.point.coords[i]);
    out << t << ',' << i << ',' << buf << '\n';
  }
}

}  // namespace rocover::oco
