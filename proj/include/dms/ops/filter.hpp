#pragma once

#include <string>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

// Indices (ascending) of samples whose `stat` lies in the closed range.
// Throws InvalidArgument when a sample lacks the statistic.
std::vector<std::size_t> keep_indices(const Dataset& dataset, const std::string& stat, const KeepRange& range);

// Pool of the samples whose statistic lies in `range`, in dataset order.
// The provenance holds the single step (op_name, range, params).
DataPool apply_filter(const Dataset& dataset, const std::string& op_name, const std::string& stat,
                      const KeepRange& range, const Json& params = Json::object());

}  // namespace dms
