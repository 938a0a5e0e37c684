#pragma once

#include <vector>

#include "dms/core/types.hpp"
#include "dms/ops/registry.hpp"

namespace dms {

inline constexpr std::size_t kDefaultMaxPyramidOps = 5;

struct PyramidSpec {
  std::vector<OperatorConfig> top_ops;
  // One pool per non-empty subset of top_ops, highest level first; within a
  // level, subsets in lexicographic order of op positions.
  std::vector<DataPool> pools;
  // Bit i set when top_ops[i] is applied to pools[j].
  std::vector<unsigned> masks;

  const DataPool& top() const { return pools.front(); }
};

Json pyramid_to_json(const PyramidSpec& p);

// Builds the 2^n - 1 pools over all non-empty subsets of the top ops. Each
// pool's level is its subset size. Throws InvalidArgument when there are no
// ops, more than max_ops, a repeated op, or an op without a keep range.
PyramidSpec build_pyramid(const Dataset& dataset, const std::vector<OperatorConfig>& top_ops,
                          const OpRegistry& registry, std::size_t max_ops = kDefaultMaxPyramidOps);

}  // namespace dms
