#ifndef ROCOVER_INSTANCES_H_
#define ROCOVER_INSTANCES_H_

// Instance documents, seeded generators and arrival orders.
//
// Document schema (JSON, 0-based indices, unknown fields rejected):
//
//   {"kind": "setcover" | "multicover" | "cip" | "nmfl",
//    "n": elements (clients), "m": resources (sets, columns, facilities),
//    setcover/multicover: "sets": [{"cost": c, "elements": [e, ...]}, ...]
//    multicover:          "demands": [b_0, ...]
//    cip:                 "costs": [...], "rows": [[{"col": j, "value": a}]]
//    nmfl:                "open_costs": [...],
//                         "distances": [[d_00, d_01, ...], ...]   (dense,
//                                      facility-major) or
//                                      [{"facility": i, "client": e, "d": x}]
//                                      (sparse; absent pairs unavailable)
//    "meta": {"name": s, "seed": u64, "generator": s, "params": {k: x}}}
//
// "meta" and every field inside it are optional.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rocover/problems.h"

namespace rocover {

enum class ProblemKind { kSetCover, kMulticover, kCip, kNmfl };

std::string_view ProblemKindName(ProblemKind kind);
// Throws InvalidArgument for an unknown name.
ProblemKind ParseProblemKind(std::string_view name);

struct InstanceMeta {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::string generator;
  std::map<std::string, double> params;

  friend bool operator==(const InstanceMeta&, const InstanceMeta&) = default;
};

using InstancePayload = std::variant<SetSystem, MulticoverInstance,
                                     CipInstance, FacilityInstance>;

struct InstanceFile {
  InstancePayload payload;
  InstanceMeta meta;

  ProblemKind kind() const { return static_cast<ProblemKind>(payload.index()); }
  std::size_t num_elements() const;
  std::size_t num_resources() const;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

// Throws ParseError ("line L, column C: ..." for syntax, "<field path>: ..."
// for schema problems) or InfeasibleInstance for documents that violate a
// feasibility invariant.
InstanceFile ParseInstance(std::string_view text);
InstanceFile LoadInstance(const std::string& path);

// Canonical text: fixed key order, one set / row / facility per line.
std::string SerializeInstance(const InstanceFile& file);
void SaveInstance(const InstanceFile& file, const std::string& path);

struct SetCoverParams {
  std::size_t n = 20;
  std::size_t m = 20;
  double density = 0.1;  // membership probability
  double cost_lo = 1.0;
  double cost_hi = 10.0;
  std::uint64_t seed = 0;
};

struct MulticoverParams {
  std::size_t n = 20;
  std::size_t m = 20;
  double density = 0.2;
  int max_demand = 3;  // demands are uniform in [1, min(max, #containing)]
  std::uint64_t seed = 0;
};

struct CipParams {
  std::size_t n = 20;
  std::size_t m = 20;
  double density = 0.2;
  double a_lo = 0.1;  // positive entries uniform in [a_lo, a_hi]
  double a_hi = 1.0;
  double cost_lo = 1.0;
  double cost_hi = 10.0;
  std::uint64_t seed = 0;
};

struct NmflParams {
  std::size_t n_clients = 20;
  std::size_t n_facilities = 20;
  double cost_lo = 1.0;
  double cost_hi = 10.0;
  double dist_lo = 0.0;
  double dist_hi = 10.0;
  std::uint64_t seed = 0;
};

// Each generator is deterministic in its seed and repairs its draw into a
// feasible instance: an uncovered element joins a uniformly chosen set, an
// empty cip row gets one entry.
InstanceFile GenSetCover(const SetCoverParams& params);
InstanceFile GenMulticover(const MulticoverParams& params);
InstanceFile GenCip(const CipParams& params);
InstanceFile GenNmfl(const NmflParams& params);

// n singleton sets of cost 1 plus one set holding every element at cost
// `big_cost`. Random prefixes keep the optimum at min(prefix, big_cost), so
// the estimate doubles repeatedly before the big set pays off.
InstanceFile GenSingletonsPlusBig(std::size_t n, double big_cost);

// m sets with costs ratio^(s / (m - 1)) spanning [1, ratio], each element in
// `per_element` random sets; optima spread over many scales.
InstanceFile GenCostGradient(std::size_t n, std::size_t m, double ratio,
                             std::size_t per_element, std::uint64_t seed);

// Uniform permutation of 0..n-1 (Fisher-Yates on the arrivals stream).
std::vector<ElementId> PermuteArrivals(std::size_t n, std::uint64_t seed);

}  // namespace rocover

#endif  // ROCOVER_INSTANCES_H_
