#include "oracles.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <variant>

namespace rocover::testing {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
std::size_t at(std::int64_t i) { return static_cast<std::size_t>(i); }
}  // namespace

SetSystem Triangle() {
  return MakeSetSystem(3, {{0, 2}, {0, 1}, {1, 2}}, {1.0, 1.0, 1.0});
}

InstanceFile TriangleFile() {
  InstanceFile file;
  file.payload = Triangle();
  file.meta.name = "triangle";
  return file;
}

std::vector<ElementId> AllElements(std::size_t n) {
  std::vector<ElementId> all(n);
  std::iota(all.begin(), all.end(), ElementId{0});
  return all;
}

double BruteSetCover(const SetSystem& sys, std::span<const ElementId> subset) {
  const std::size_t m = sys.num_sets();
  if (m > 22) throw std::invalid_argument("BruteSetCover: too many sets");
  double best = kInf;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    double cost = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask >> j & 1u) cost += sys.costs[j];
    }
    if (cost >= best) continue;
    bool ok = true;
    for (ElementId e : subset) {
      bool covered = false;
      for (ResourceId s : sys.sets_of[at(e)]) covered |= (mask >> s & 1u) != 0;
      if (!covered) {
        ok = false;
        break;
      }
    }
    if (ok) best = cost;
  }
  return best;
}

double BruteMulticover(const MulticoverInstance& inst,
                       std::span<const ElementId> subset) {
  const SetSystem& sys = inst.system;
  const std::size_t m = sys.num_sets();
  if (m > 22) throw std::invalid_argument("BruteMulticover: too many sets");
  double best = kInf;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    const double cost = static_cast<double>(__builtin_popcount(mask));
    if (cost >= best) continue;
    bool ok = true;
    for (ElementId e : subset) {
      int have = 0;
      for (ResourceId s : sys.sets_of[at(e)]) have += (mask >> s & 1u) ? 1 : 0;
      if (have < inst.demands[at(e)]) {
        ok = false;
        break;
      }
    }
    if (ok) best = cost;
  }
  return best;
}

double BruteCip(const CipInstance& inst, std::span<const ElementId> subset) {
  const std::size_t m = inst.num_cols();
  std::vector<int> cap(m, 0);
  for (ElementId e : subset) {
    for (const CipEntry& a : inst.rows[at(e)]) {
      cap[at(a.col)] = std::max(cap[at(a.col)],
                                static_cast<int>(std::ceil(1.0 / a.value - 1e-12)));
    }
  }
  double states = 1.0;
  for (int c : cap) states *= c + 1;
  if (states > 5e6) throw std::invalid_argument("BruteCip: search too large");
  std::vector<int> x(m, 0);
  double best = kInf;
  while (true) {
    double cost = 0.0;
    for (std::size_t j = 0; j < m; ++j) cost += inst.costs[j] * x[j];
    if (cost < best) {
      bool ok = true;
      for (ElementId e : subset) {
        double cov = 0.0;
        for (const CipEntry& a : inst.rows[at(e)]) cov += a.value * x[at(a.col)];
        if (cov < 1.0 - 1e-9) {
          ok = false;
          break;
        }
      }
      if (ok) best = cost;
    }
    std::size_t j = 0;
    while (j < m && x[j] == cap[j]) x[j++] = 0;
    if (j == m) break;
    ++x[j];
  }
  return best;
}

double BruteNmfl(const FacilityInstance& inst,
                 std::span<const ElementId> subset) {
  const std::size_t f = inst.num_facilities();
  if (f > 20) throw std::invalid_argument("BruteNmfl: too many facilities");
  if (subset.empty()) return 0.0;
  double best = kInf;
  for (std::uint32_t mask = 1; mask < (1u << f); ++mask) {
    double cost = 0.0;
    for (std::size_t i = 0; i < f; ++i) {
      if (mask >> i & 1u) cost += inst.open_costs[i];
    }
    for (ElementId e : subset) {
      double near = kInf;
      for (std::size_t i = 0; i < f; ++i) {
        if (mask >> i & 1u) {
          near = std::min(near, inst.distance(static_cast<ResourceId>(i), e));
        }
      }
      cost += near;
    }
    best = std::min(best, cost);
  }
  return best;
}

double BruteOpt(const InstanceFile& file, std::span<const ElementId> subset) {
  return std::visit(
      [&](const auto& inst) -> double {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, SetSystem>) {
          return BruteSetCover(inst, subset);
        } else if constexpr (std::is_same_v<T, MulticoverInstance>) {
          return BruteMulticover(inst, subset);
        } else if constexpr (std::is_same_v<T, CipInstance>) {
          return BruteCip(inst, subset);
        } else {
          return BruteNmfl(inst, subset);
        }
      },
      file.payload);
}

long double UklReference(std::span<const double> p, std::span<const double> q) {
  long double total = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const long double pi = p[i], qi = q[i];
    if (pi > 0.0L) total += pi * std::log(pi / qi);
    total += qi - pi;
  }
  return total;
}

}  // namespace rocover::testing
