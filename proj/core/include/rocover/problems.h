#ifndef ROCOVER_PROBLEMS_H_
#define ROCOVER_PROBLEMS_H_

// Instance types and ProblemOracle adapters for weighted set cover,
// unweighted set multicover, covering integer programs (half-coverage
// variant) and non-metric facility location.
//
// Adapters hold a pointer to their instance; the instance must outlive them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rocover/framework.h"
#include "rocover/sparse.h"

namespace rocover {

struct SetSystem {
  std::size_t num_elements = 0;
  std::vector<double> costs;                        // per set
  std::vector<std::vector<ElementId>> sets;         // sorted members
  std::vector<std::vector<ResourceId>> sets_of;     // per element, sorted

  std::size_t num_sets() const { return costs.size(); }

  friend bool operator==(const SetSystem&, const SetSystem&) = default;
};

// Builds the inverse index and validates: costs positive and finite, element
// ids in range, no duplicates within a set. Throws InvalidArgument, or
// InfeasibleInstance when some element belongs to no set.
SetSystem MakeSetSystem(std::size_t num_elements,
                        std::vector<std::vector<ElementId>> sets,
                        std::vector<double> costs);

struct MulticoverInstance {
  SetSystem system;          // unit costs
  std::vector<int> demands;  // b_e >= 1

  friend bool operator==(const MulticoverInstance&,
                         const MulticoverInstance&) = default;
};

// Throws InvalidArgument for non-unit costs or nonpositive demands, and
// InfeasibleInstance when b_e exceeds the number of sets containing e.
MulticoverInstance MakeMulticover(SetSystem system, std::vector<int> demands);

struct CipEntry {
  ResourceId col = 0;
  double value = 0.0;

  friend bool operator==(const CipEntry&, const CipEntry&) = default;
};

struct CipInstance {
  std::size_t num_rows = 0;
  std::vector<double> costs;                  // per column
  std::vector<std::vector<CipEntry>> rows;    // positive entries, sorted by col
  std::vector<std::vector<std::pair<ElementId, double>>> columns;

  std::size_t num_cols() const { return costs.size(); }

  friend bool operator==(const CipInstance&, const CipInstance&) = default;
};

// Drops zero entries, validates A in [0, 1] ("A entries must lie in [0,1]")
// and that every row has a positive entry.
CipInstance MakeCip(std::size_t num_cols, std::vector<double> costs,
                    std::vector<std::vector<CipEntry>> rows);

struct FacilityInstance {
  std::size_t num_clients = 0;
  std::vector<double> open_costs;  // per facility
  // distances[i * num_clients + e]; +inf marks an unavailable pair.
  std::vector<double> distances;

  std::size_t num_facilities() const { return open_costs.size(); }
  double distance(ResourceId i, ElementId e) const {
    return distances[static_cast<std::size_t>(i) * num_clients +
                     static_cast<std::size_t>(e)];
  }

  friend bool operator==(const FacilityInstance&,
                         const FacilityInstance&) = default;
};

FacilityInstance MakeFacility(std::size_t num_clients,
                              std::vector<double> open_costs,
                              std::vector<double> distances);

// Weighted set cover. kappa is the cheapest containing set unless e is
// already covered; alpha = 1.
class SetCoverOracle final : public ProblemOracle {
 public:
  explicit SetCoverOracle(const SetSystem& system);

  std::string_view name() const override { return "setcover"; }
  std::size_t num_elements() const override { return sys_->num_elements; }
  std::span<const double> resource_costs() const override {
    return sys_->costs;
  }
  double alpha() const override { return 1.0; }

  double Kappa(ElementId e, const Holdings& held) const override;
  Augmentation Augment(ElementId e, const Holdings& held) const override;
  SparseVector GainSubgradient(ElementId e, const Holdings& held,
                               std::span<const double> p,
                               double est) const override;
  double GainValue(ElementId e, const Holdings& held,
                   std::span<const double> p, double est) const override;
  double InitialAug(ElementId e) const override { return cheapest_[idx(e)]; }
  bool IsServed(ElementId e, const Holdings& held) const override;

  bool IsCovered(ElementId e, const Holdings& held) const;
  // Lowest-index set of minimum cost containing e.
  ResourceId CheapestSet(ElementId e) const { return cheapest_set_[idx(e)]; }

 private:
  static std::size_t idx(ElementId e) { return static_cast<std::size_t>(e); }
  double Mass(ElementId e, std::span<const double> p) const;

  const SetSystem* sys_;
  std::vector<double> cheapest_;
  std::vector<ResourceId> cheapest_set_;
};

// Unweighted set multicover. kappa = residual demand; alpha = 1.
class MulticoverOracle final : public ProblemOracle {
 public:
  explicit MulticoverOracle(const MulticoverInstance& instance);

  std::string_view name() const override { return "multicover"; }
  std::size_t num_elements() const override {
    return inst_->system.num_elements;
  }
  std::span<const double> resource_costs() const override {
    return inst_->system.costs;
  }
  double alpha() const override { return 1.0; }

  double Kappa(ElementId e, const Holdings& held) const override {
    return static_cast<double>(Residual(e, held));
  }
  Augmentation Augment(ElementId e, const Holdings& held) const override;
  SparseVector GainSubgradient(ElementId e, const Holdings& held,
                               std::span<const double> p,
                               double est) const override;
  double GainValue(ElementId e, const Holdings& held,
                   std::span<const double> p, double est) const override;
  double InitialAug(ElementId e) const override {
    return static_cast<double>(inst_->demands[static_cast<std::size_t>(e)]);
  }
  bool IsServed(ElementId e, const Holdings& held) const override {
    return Residual(e, held) == 0;
  }

  // max(0, b_e - #held sets containing e).
  int Residual(ElementId e, const Holdings& held) const;

 private:
  double UnheldMass(ElementId e, const Holdings& held,
                    std::span<const double> p) const;

  const MulticoverInstance* inst_;
};

// Density of an element: the column minimizing c_S / A_eS and that ratio.
struct Density {
  ResourceId column = -1;
  double rho = 0.0;
};

// Covering integer program in its half-coverage form: e counts as covered
// once <A_e, x> > 1/2. kappa = b_e * rho_e; alpha = 4. Copies allowed.
class CipOracle final : public ProblemOracle {
 public:
  explicit CipOracle(const CipInstance& instance);

  std::string_view name() const override { return "cip"; }
  std::size_t num_elements() const override { return inst_->num_rows; }
  std::span<const double> resource_costs() const override {
    return inst_->costs;
  }
  double alpha() const override { return 4.0; }

  double Kappa(ElementId e, const Holdings& held) const override;
  Augmentation Augment(ElementId e, const Holdings& held) const override;
  SparseVector GainSubgradient(ElementId e, const Holdings& held,
                               std::span<const double> p,
                               double est) const override;
  double GainValue(ElementId e, const Holdings& held,
                   std::span<const double> p, double est) const override;
  // rho_e, the fractional cost of covering e from scratch.
  double InitialAug(ElementId e) const override {
    return density_[static_cast<std::size_t>(e)].rho;
  }
  bool CopiesAllowed() const override { return true; }
  bool IsServed(ElementId e, const Holdings& held) const override {
    return Residual(e, held) == 0.0;
  }

  const Density& DensityOf(ElementId e) const {
    return density_[static_cast<std::size_t>(e)];
  }
  double Coverage(ElementId e, std::span<const std::int64_t> copies) const;
  double Coverage(ElementId e, std::span<const double> x) const;
  // 1 - <A_e, x> when that coverage is at most 1/2, else 0.
  double Residual(ElementId e, const Holdings& held) const;

 private:
  const CipInstance* inst_;
  std::vector<Density> density_;
};

// Density-minimizing column of a row (ties: lowest column).
Density CipDensity(const CipInstance& instance, ElementId e);

// Turns a half-cover into a full cover by doubling every copy count.
std::vector<std::int64_t> CipFinalize(std::span<const std::int64_t> copies);

// Non-metric facility location. Resources are facilities, elements are
// clients. kappa = min(nearest open, cheapest open-and-connect); alpha = 1.
class FacilityOracle final : public ProblemOracle {
 public:
  explicit FacilityOracle(const FacilityInstance& instance);

  std::string_view name() const override { return "nmfl"; }
  std::size_t num_elements() const override { return inst_->num_clients; }
  std::span<const double> resource_costs() const override {
    return inst_->open_costs;
  }
  double alpha() const override { return 1.0; }

  double Kappa(ElementId e, const Holdings& held) const override;
  Augmentation Augment(ElementId e, const Holdings& held) const override;
  SparseVector GainSubgradient(ElementId e, const Holdings& held,
                               std::span<const double> p,
                               double est) const override;
  double GainValue(ElementId e, const Holdings& held,
                   std::span<const double> p, double est) const override;
  double InitialAug(ElementId e) const override {
    return initial_[static_cast<std::size_t>(e)];
  }
  bool IsServed(ElementId e, const Holdings& held) const override;
  Service Serve(ElementId e, const Holdings& held) const override;

  // Indicator of facilities within kappa / 2 of e (inclusive).
  std::vector<char> Gamma(ElementId e, const Holdings& held) const;

 private:
  const FacilityInstance* inst_;
  std::vector<double> initial_;
};

}  // namespace rocover

#endif  // ROCOVER_PROBLEMS_H_
