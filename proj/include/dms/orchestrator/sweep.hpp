#pragma once

#include <string>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

struct SweepGrid {
  std::vector<Json> points;  // hyperparameter overrides, one per trial
  std::vector<std::string> warnings;
};

// Reads either params.grid, a mapping of hyperparameter -> list of values
// expanded as a cartesian product (keys in sorted order, last key varying
// fastest), or params.points, an explicit list of override mappings.
// Repeated points keep their first occurrence and add a warning. Throws
// InvalidArgument for an empty grid or when both or neither form is given.
SweepGrid expand_grid(const Json& params);

}  // namespace dms
