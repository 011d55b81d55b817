#include "rocover/problems.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rocover/errors.h"

namespace rocover {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative slack when asserting the bounded-gradient property.
constexpr double kBoundSlack = 1e-12;

void CheckCost(double c, const char* what) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidArgument(std::string(what) + " must be positive and finite");
  }
}

std::size_t idx(std::int64_t v) { return static_cast<std::size_t>(v); }

// value / est, asserting value <= cost (the bounded-gradient property) and
// absorbing the last-ulp rounding of the product that produced `value`.
double BoundedEntry(double value, double cost, double est) {
  if (value > cost * (1.0 + kBoundSlack)) {
    throw ContractViolation("gradient entry " + std::to_string(value / est) +
                            " exceeds c_S / est = " +
                            std::to_string(cost / est));
  }
  return std::min(value, cost) / est;
}

}  // namespace

SetSystem MakeSetSystem(std::size_t num_elements,
                        std::vector<std::vector<ElementId>> sets,
                        std::vector<double> costs) {
  if (sets.size() != costs.size()) {
    throw InvalidArgument("set system: one cost per set required");
  }
  SetSystem sys;
  sys.num_elements = num_elements;
  sys.sets_of.assign(num_elements, {});
  for (std::size_t s = 0; s < sets.size(); ++s) {
    CheckCost(costs[s], "set costs");
    auto& members = sets[s];
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
      throw InvalidArgument("set " + std::to_string(s) +
                            " lists an element twice");
    }
    for (ElementId e : members) {
      if (e < 0 || idx(e) >= num_elements) {
        throw InvalidArgument("set " + std::to_string(s) +
                              " has an element index out of range");
      }
      sys.sets_of[idx(e)].push_back(static_cast<ResourceId>(s));
    }
  }
  for (std::size_t e = 0; e < num_elements; ++e) {
    if (sys.sets_of[e].empty()) {
      throw InfeasibleInstance("element " + std::to_string(e) +
                               " belongs to no set");
    }
  }
  sys.sets = std::move(sets);
  sys.costs = std::move(costs);
  return sys;
}

MulticoverInstance MakeMulticover(SetSystem system, std::vector<int> demands) {
  if (demands.size() != system.num_elements) {
    throw InvalidArgument("multicover: one demand per element required");
  }
  for (double c : system.costs) {
    if (c != 1.0) throw InvalidArgument("multicover: set costs must all be 1");
  }
  for (std::size_t e = 0; e < demands.size(); ++e) {
    if (demands[e] < 1) {
      throw InvalidArgument("multicover: demands must be positive integers");
    }
    if (idx(demands[e]) > system.sets_of[e].size()) {
      throw InfeasibleInstance(
          "multicover: element " + std::to_string(e) + " demands " +
          std::to_string(demands[e]) + " sets but only " +
          std::to_string(system.sets_of[e].size()) + " contain it");
    }
  }
  return MulticoverInstance{std::move(system), std::move(demands)};
}

CipInstance MakeCip(std::size_t num_cols, std::vector<double> costs,
                    std::vector<std::vector<CipEntry>> rows) {
  if (costs.size() != num_cols) {
    throw InvalidArgument("cip: one cost per column required");
  }
  for (double c : costs) CheckCost(c, "cip costs");
  CipInstance cip;
  cip.num_rows = rows.size();
  cip.columns.assign(num_cols, {});
  for (std::size_t e = 0; e < rows.size(); ++e) {
    auto& row = rows[e];
    std::erase_if(row, [](const CipEntry& x) { return x.value == 0.0; });
    std::sort(row.begin(), row.end(),
              [](const CipEntry& a, const CipEntry& b) { return a.col < b.col; });
    for (std::size_t k = 0; k < row.size(); ++k) {
      const CipEntry& entry = row[k];
      if (entry.col < 0 || idx(entry.col) >= num_cols) {
        throw InvalidArgument("cip: column index out of range in row " +
                              std::to_string(e));
      }
      if (k > 0 && row[k - 1].col == entry.col) {
        throw InvalidArgument("cip: duplicate column in row " +
                              std::to_string(e));
      }
      if (!(entry.value >= 0.0 && entry.value <= 1.0)) {
        throw InvalidArgument("A entries must lie in [0,1]");
      }
      cip.columns[idx(entry.col)].push_back(
          {static_cast<ElementId>(e), entry.value});
    }
    if (row.empty()) {
      throw InfeasibleInstance("cip: row " + std::to_string(e) +
                               " has no positive entry");
    }
  }
  cip.rows = std::move(rows);
  cip.costs = std::move(costs);
  return cip;
}

FacilityInstance MakeFacility(std::size_t num_clients,
                              std::vector<double> open_costs,
                              std::vector<double> distances) {
  if (distances.size() != open_costs.size() * num_clients) {
    throw InvalidArgument("nmfl: distance matrix must be facilities x clients");
  }
  for (double c : open_costs) CheckCost(c, "nmfl open costs");
  for (double d : distances) {
    if (std::isnan(d) || d < 0.0) {
      throw InvalidArgument("nmfl: distances must be nonnegative");
    }
  }
  FacilityInstance inst{num_clients, std::move(open_costs),
                        std::move(distances)};
  for (std::size_t e = 0; e < num_clients; ++e) {
    bool reachable = false;
    for (std::size_t i = 0; i < inst.num_facilities(); ++i) {
      reachable = reachable || std::isfinite(inst.distances[i * num_clients + e]);
    }
    if (!reachable) {
      throw InfeasibleInstance("nmfl: client " + std::to_string(e) +
                               " has no reachable facility");
    }
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Set cover.

SetCoverOracle::SetCoverOracle(const SetSystem& system) : sys_(&system) {
  cheapest_.resize(system.num_elements);
  cheapest_set_.resize(system.num_elements);
  for (std::size_t e = 0; e < system.num_elements; ++e) {
    double best = kInf;
    ResourceId best_set = -1;
    for (ResourceId s : system.sets_of[e]) {
      if (system.costs[idx(s)] < best) {
        best = system.costs[idx(s)];
        best_set = s;
      }
    }
    if (best_set < 0) {
      throw InfeasibleInstance("element " + std::to_string(e) +
                               " belongs to no set");
    }
    cheapest_[e] = best;
    cheapest_set_[e] = best_set;
  }
}

bool SetCoverOracle::IsCovered(ElementId e, const Holdings& held) const {
  for (ResourceId s : sys_->sets_of[idx(e)]) {
    if (held.has(s)) return true;
  }
  return false;
}

bool SetCoverOracle::IsServed(ElementId e, const Holdings& held) const {
  return IsCovered(e, held);
}

double SetCoverOracle::Kappa(ElementId e, const Holdings& held) const {
  return IsCovered(e, held) ? 0.0 : cheapest_[idx(e)];
}

Augmentation SetCoverOracle::Augment(ElementId e, const Holdings& held) const {
  if (IsCovered(e, held)) return {};
  const ResourceId s = cheapest_set_[idx(e)];
  return Augmentation{{s}, sys_->costs[idx(s)]};
}

double SetCoverOracle::Mass(ElementId e, std::span<const double> p) const {
  double mass = 0.0;
  for (ResourceId s : sys_->sets_of[idx(e)]) mass += p[idx(s)];
  return mass;
}

SparseVector SetCoverOracle::GainSubgradient(ElementId e, const Holdings& held,
                                             std::span<const double> p,
                                             double est) const {
  const double kappa = Kappa(e, held);
  if (kappa == 0.0 || Mass(e, p) >= 1.0) return {};
  SparseVector grad;
  grad.reserve(sys_->sets_of[idx(e)].size());
  for (ResourceId s : sys_->sets_of[idx(e)]) {
    grad.push_back({s, BoundedEntry(kappa, sys_->costs[idx(s)], est)});
  }
  return grad;
}

double SetCoverOracle::GainValue(ElementId e, const Holdings& held,
                                 std::span<const double> p, double est) const {
  return Kappa(e, held) / est * std::min(1.0, Mass(e, p));
}

// ---------------------------------------------------------------------------
// Set multicover.

MulticoverOracle::MulticoverOracle(const MulticoverInstance& instance)
    : inst_(&instance) {}

int MulticoverOracle::Residual(ElementId e, const Holdings& held) const {
  int have = 0;
  for (ResourceId s : inst_->system.sets_of[idx(e)]) have += held.has(s) ? 1 : 0;
  return std::max(0, inst_->demands[idx(e)] - have);
}

Augmentation MulticoverOracle::Augment(ElementId e, const Holdings& held) const {
  int need = Residual(e, held);
  Augmentation aug;
  for (ResourceId s : inst_->system.sets_of[idx(e)]) {
    if (need == 0) break;
    if (!held.has(s)) {
      aug.purchases.push_back(s);
      --need;
    }
  }
  if (need > 0) {
    throw InfeasibleInstance("multicover: element " + std::to_string(e) +
                             " has too few unbought containing sets");
  }
  aug.cost = static_cast<double>(aug.purchases.size());
  return aug;
}

double MulticoverOracle::UnheldMass(ElementId e, const Holdings& held,
                                    std::span<const double> p) const {
  double mass = 0.0;
  for (ResourceId s : inst_->system.sets_of[idx(e)]) {
    if (!held.has(s)) mass += p[idx(s)];
  }
  return mass;
}

SparseVector MulticoverOracle::GainSubgradient(ElementId e,
                                               const Holdings& held,
                                               std::span<const double> p,
                                               double est) const {
  const int residual = Residual(e, held);
  if (residual == 0 || UnheldMass(e, held, p) >= residual) return {};
  SparseVector grad;
  for (ResourceId s : inst_->system.sets_of[idx(e)]) {
    if (!held.has(s)) grad.push_back({s, 1.0 / est});
  }
  return grad;
}

double MulticoverOracle::GainValue(ElementId e, const Holdings& held,
                                   std::span<const double> p,
                                   double est) const {
  const double residual = Residual(e, held);
  return std::min(residual, UnheldMass(e, held, p)) / est;
}

// ---------------------------------------------------------------------------
// Covering integer programs.

Density CipDensity(const CipInstance& instance, ElementId e) {
  Density best;
  best.rho = kInf;
  for (const CipEntry& entry : instance.rows[idx(e)]) {
    if (entry.value <= 0.0) continue;
    const double rho = instance.costs[idx(entry.col)] / entry.value;
    if (rho < best.rho) best = {entry.col, rho};
  }
  return best;
}

std::vector<std::int64_t> CipFinalize(std::span<const std::int64_t> copies) {
  std::vector<std::int64_t> doubled(copies.begin(), copies.end());
  for (auto& c : doubled) c *= 2;
  return doubled;
}

CipOracle::CipOracle(const CipInstance& instance) : inst_(&instance) {
  density_.resize(instance.num_rows);
  for (std::size_t e = 0; e < instance.num_rows; ++e) {
    density_[e] = CipDensity(instance, static_cast<ElementId>(e));
    if (density_[e].column < 0) {
      throw InfeasibleInstance("cip: row " + std::to_string(e) +
                               " has no positive entry");
    }
  }
}

double CipOracle::Coverage(ElementId e,
                           std::span<const std::int64_t> copies) const {
  double cov = 0.0;
  for (const CipEntry& entry : inst_->rows[idx(e)]) {
    cov += entry.value * static_cast<double>(copies[idx(entry.col)]);
  }
  return cov;
}

double CipOracle::Coverage(ElementId e, std::span<const double> x) const {
  double cov = 0.0;
  for (const CipEntry& entry : inst_->rows[idx(e)]) {
    cov += entry.value * x[idx(entry.col)];
  }
  return cov;
}

double CipOracle::Residual(ElementId e, const Holdings& held) const {
  const double cov = Coverage(e, held.counts());
  return cov <= 0.5 ? 1.0 - cov : 0.0;
}

double CipOracle::Kappa(ElementId e, const Holdings& held) const {
  const double residual = Residual(e, held);
  return residual >= 0.5 ? residual * density_[idx(e)].rho : 0.0;
}

Augmentation CipOracle::Augment(ElementId e, const Holdings& held) const {
  const double residual = Residual(e, held);
  if (residual == 0.0) return {};
  const Density& dens = density_[idx(e)];
  double a = 0.0;
  for (const CipEntry& entry : inst_->rows[idx(e)]) {
    if (entry.col == dens.column) a = entry.value;
  }
  auto copies = static_cast<std::int64_t>(std::ceil(residual / a));
  // 0.6 / 0.3 evaluates just above 2; drop the copy rounding added.
  if (copies > 1 && static_cast<double>(copies - 1) * a >= residual - 1e-12) {
    --copies;
  }
  Augmentation aug;
  aug.purchases.assign(idx(std::max<std::int64_t>(copies, 1)), dens.column);
  aug.cost = static_cast<double>(aug.purchases.size()) *
             inst_->costs[idx(dens.column)];
  return aug;
}

SparseVector CipOracle::GainSubgradient(ElementId e, const Holdings& held,
                                        std::span<const double> p,
                                        double est) const {
  const double residual = Residual(e, held);
  if (residual == 0.0 || Coverage(e, p) >= residual) return {};
  const double rho = density_[idx(e)].rho;
  SparseVector grad;
  grad.reserve(inst_->rows[idx(e)].size());
  for (const CipEntry& entry : inst_->rows[idx(e)]) {
    grad.push_back({entry.col, BoundedEntry(rho * entry.value,
                                            inst_->costs[idx(entry.col)], est)});
  }
  return grad;
}

double CipOracle::GainValue(ElementId e, const Holdings& held,
                            std::span<const double> p, double est) const {
  const double residual = Residual(e, held);
  return density_[idx(e)].rho / est * std::min(residual, Coverage(e, p));
}

// ---------------------------------------------------------------------------
// Non-metric facility location.

FacilityOracle::FacilityOracle(const FacilityInstance& instance)
    : inst_(&instance) {
  initial_.assign(instance.num_clients, kInf);
  for (std::size_t e = 0; e < instance.num_clients; ++e) {
    for (std::size_t i = 0; i < instance.num_facilities(); ++i) {
      initial_[e] = std::min(
          initial_[e], instance.open_costs[i] +
                           instance.distances[i * instance.num_clients + e]);
    }
  }
}

namespace {

struct BestOption {
  double open_dist = kInf;  // nearest held facility
  ResourceId open_facility = -1;
  double new_cost = kInf;   // cheapest c_i + d_ie over closed facilities
  ResourceId new_facility = -1;
};

BestOption Options(const FacilityInstance& inst, ElementId e,
                   const Holdings& held) {
  BestOption best;
  for (std::size_t i = 0; i < inst.num_facilities(); ++i) {
    const auto fi = static_cast<ResourceId>(i);
    const double d = inst.distance(fi, e);
    if (held.has(fi)) {
      if (d < best.open_dist) {
        best.open_dist = d;
        best.open_facility = fi;
      }
    } else if (inst.open_costs[i] + d < best.new_cost) {
      best.new_cost = inst.open_costs[i] + d;
      best.new_facility = fi;
    }
  }
  return best;
}

}  // namespace

double FacilityOracle::Kappa(ElementId e, const Holdings& held) const {
  const BestOption best = Options(*inst_, e, held);
  return std::min(best.open_dist, best.new_cost);
}

Augmentation FacilityOracle::Augment(ElementId e, const Holdings& held) const {
  const BestOption best = Options(*inst_, e, held);
  if (best.open_facility >= 0 && best.open_dist <= best.new_cost) {
    return Augmentation{{}, best.open_dist};
  }
  if (best.new_facility < 0) {
    throw InfeasibleInstance("nmfl: client " + std::to_string(e) +
                             " has no reachable facility");
  }
  return Augmentation{{best.new_facility}, best.new_cost};
}

bool FacilityOracle::IsServed(ElementId e, const Holdings& held) const {
  return std::isfinite(Options(*inst_, e, held).open_dist);
}

Service FacilityOracle::Serve(ElementId e, const Holdings& held) const {
  const BestOption best = Options(*inst_, e, held);
  if (best.open_facility < 0) return Service{-1, kInf};
  return Service{best.open_facility, best.open_dist};
}

std::vector<char> FacilityOracle::Gamma(ElementId e,
                                        const Holdings& held) const {
  const double threshold = Kappa(e, held) / 2.0;
  std::vector<char> chi(inst_->num_facilities(), 0);
  for (std::size_t i = 0; i < chi.size(); ++i) {
    chi[i] = inst_->distance(static_cast<ResourceId>(i), e) <= threshold;
  }
  return chi;
}

SparseVector FacilityOracle::GainSubgradient(ElementId e, const Holdings& held,
                                             std::span<const double> p,
                                             double est) const {
  const double kappa = Kappa(e, held);
  if (kappa == 0.0) return {};
  const std::vector<char> chi = Gamma(e, held);
  double mass = 0.0;
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (chi[i]) mass += p[i];
  }
  if (mass >= 1.0) return {};
  SparseVector grad;
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (!chi[i]) continue;
    // kappa <= c_i + d_ie <= c_i + kappa / 2, so kappa / 2 <= c_i.
    grad.push_back({static_cast<ResourceId>(i),
                    BoundedEntry(kappa / 2.0, inst_->open_costs[i], est)});
  }
  return grad;
}

double FacilityOracle::GainValue(ElementId e, const Holdings& held,
                                 std::span<const double> p, double est) const {
  const double kappa = Kappa(e, held);
  if (kappa == 0.0) return 0.0;
  const std::vector<char> chi = Gamma(e, held);
  double mass = 0.0;
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (chi[i]) mass += p[i];
  }
  return kappa / (2.0 * est) * std::min(1.0, mass);
}

}  // namespace rocover
