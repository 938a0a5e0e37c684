#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dms/core/types.hpp"
#include "dms/pools/pyramid.hpp"

namespace dms {

enum class ScheduleMode { repetitive, non_repetitive };

std::string_view to_string(ScheduleMode mode);
ScheduleMode schedule_mode_from_string(std::string_view s);

struct ScheduleEntry {
  std::string pool_id;
  std::size_t pass = 0;
  std::size_t count = 0;  // samples this entry contributes

  bool operator==(const ScheduleEntry&) const = default;
};

struct ComputeSchedule {
  ScheduleMode mode = ScheduleMode::repetitive;
  std::size_t k = 1;
  std::vector<ScheduleEntry> stream;
  std::size_t target = 0;  // k x |top pool|
  std::size_t total = 0;
  std::vector<std::string> warnings;
  // Trained sample ids in stream order.
  std::vector<std::string> samples;

  bool truncated() const noexcept { return total < target; }
};

// Summary form {mode, k, stream, total, target, warnings}; sample ids are
// omitted.
Json to_json_summary(const ComputeSchedule& s);

// Repetitive: k passes over the top pool, each pass in its own seeded order.
// Non-repetitive: the dedup-merged descent through the pyramid pools
// (highest level first) until k x |top pool| samples are reached; when the
// pyramid holds fewer unique samples the total stops short and a warning is
// recorded. Throws InvalidArgument when k is 0 or the pyramid or its top
// pool is empty.
ComputeSchedule schedule_compute(const Dataset& dataset, const PyramidSpec& pyramid, std::size_t k,
                                 ScheduleMode mode, std::uint64_t seed);

// Same, over an explicit pool list ordered from the top pool downward.
ComputeSchedule schedule_compute(const Dataset& dataset, const std::vector<DataPool>& pools, std::size_t k,
                                 ScheduleMode mode, std::uint64_t seed);

}  // namespace dms
