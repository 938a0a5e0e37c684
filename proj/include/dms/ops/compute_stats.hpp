#pragma once

#include <filesystem>
#include <vector>

#include "dms/core/types.hpp"
#include "dms/ops/registry.hpp"

namespace dms {

struct ComputeOptions {
  // Relative asset paths in spec params resolve against this directory.
  std::filesystem::path asset_dir;
  // Bound on concurrently running external scorer batches.
  std::size_t max_parallel = 1;
};

// Attaches one statistic per spec to every sample. Unrelated stats are kept.
// The OpenMP kernel and the serial reference produce identical datasets.
//
// Throws InvalidArgument for an unknown operator, invalid params, a stat name
// already written by a different operator, or a non-finite value; IoError for
// a missing asset.
Dataset compute_stats(const Dataset& dataset, const std::vector<StatSpec>& specs,
                      const OpRegistry& registry, const ComputeOptions& options = {});
Dataset compute_stats_serial(const Dataset& dataset, const std::vector<StatSpec>& specs,
                             const OpRegistry& registry, const ComputeOptions& options = {});

}  // namespace dms
