#ifndef ROCOVER_SPARSE_H_
#define ROCOVER_SPARSE_H_

#include <cstdint>
#include <vector>

namespace rocover {

using ElementId = std::int32_t;
using ResourceId = std::int32_t;

struct SparseEntry {
  ResourceId index = 0;
  double value = 0.0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

using SparseVector = std::vector<SparseEntry>;

}  // namespace rocover

#endif  // ROCOVER_SPARSE_H_
