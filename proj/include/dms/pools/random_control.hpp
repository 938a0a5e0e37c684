#pragma once

#include <cstdint>

#include "dms/core/types.hpp"

namespace dms {

inline constexpr const char* kRandomPoolId = "random";

// Uniform draw of `size` distinct samples, listed in a seeded random order.
// Throws InvalidArgument when size exceeds the dataset.
DataPool sample_random_control(const Dataset& dataset, std::size_t size, std::uint64_t seed);

}  // namespace dms
