#pragma once

#include <string>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

// NFC text plus the sorted media paths.
std::string dedup_key(const Sample& sample);

// Concatenates the pools in order and drops every sample whose dedup key was
// already seen; the first occurrence wins. The merged pool keeps the
// provenance steps shared by all sources. Throws InvalidArgument when a pool
// names a sample that is not in the dataset.
DataPool dedup_exact(const Dataset& dataset, const std::vector<DataPool>& pools,
                     const std::string& pool_id = "merged");

}  // namespace dms
