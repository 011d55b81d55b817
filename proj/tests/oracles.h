#ifndef ROCOVER_TESTS_ORACLES_H_
#define ROCOVER_TESTS_ORACLES_H_

// Reference implementations used only by tests. They are deliberately
// naive (exhaustive enumeration, long double arithmetic) and share no code
// with the library's solvers.

#include <cstddef>
#include <span>
#include <vector>

#include "rocover/instances.h"
#include "rocover/problems.h"

namespace rocover::testing {

// 3 edge-elements, 3 unit-cost vertex-sets, each vertex covering 2 edges.
SetSystem Triangle();
InstanceFile TriangleFile();

// Exhaustive optimum over all 2^m set subsets (m <= 22).
double BruteSetCover(const SetSystem& sys, std::span<const ElementId> subset);
double BruteMulticover(const MulticoverInstance& inst,
                       std::span<const ElementId> subset);
// Exhaustive over copy vectors with x_j <= ceil(1 / min_e A_ej), Ax >= 1.
double BruteCip(const CipInstance& inst, std::span<const ElementId> subset);
// Exhaustive over all facility subsets, clients of `subset` connect to the
// nearest open facility.
double BruteNmfl(const FacilityInstance& inst,
                 std::span<const ElementId> subset);
double BruteOpt(const InstanceFile& file, std::span<const ElementId> subset);

// Unnormalized KL evaluated in long double.
long double UklReference(std::span<const double> p, std::span<const double> q);

std::vector<ElementId> AllElements(std::size_t n);

}  // namespace rocover::testing

#endif  // ROCOVER_TESTS_ORACLES_H_
