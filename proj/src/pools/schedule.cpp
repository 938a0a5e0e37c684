#include "dms/pools/schedule.hpp"

#include <unordered_set>

#include "dms/core/digest.hpp"
#include "dms/core/error.hpp"
#include "dms/core/rng.hpp"
#include "dms/pools/dedup.hpp"

namespace dms {

std::string_view to_string(ScheduleMode mode) {
  return mode == ScheduleMode::repetitive ? "repetitive" : "non-repetitive";
}

ScheduleMode schedule_mode_from_string(std::string_view s) {
  if (s == "repetitive") return ScheduleMode::repetitive;
  if (s == "non-repetitive" || s == "non_repetitive") return ScheduleMode::non_repetitive;
  throw InvalidArgument("unknown schedule mode '" + std::string(s) + "'");
}

Json to_json_summary(const ComputeSchedule& s) {
  Json stream = Json::array();
  for (const auto& e : s.stream) stream.push_back({{"pool_id", e.pool_id}, {"pass", e.pass}, {"count", e.count}});
  return Json{{"mode", to_string(s.mode)}, {"k", s.k},           {"stream", stream},
              {"total", s.total},          {"target", s.target}, {"warnings", s.warnings}};
}

ComputeSchedule schedule_compute(const Dataset& dataset, const PyramidSpec& pyramid, std::size_t k,
                                 ScheduleMode mode, std::uint64_t seed) {
  return schedule_compute(dataset, pyramid.pools, k, mode, seed);
}

ComputeSchedule schedule_compute(const Dataset& dataset, const std::vector<DataPool>& pools, std::size_t k,
                                 ScheduleMode mode, std::uint64_t seed) {
  if (k == 0) throw InvalidArgument("expansion rate must be at least 1");
  if (pools.empty()) throw InvalidArgument("cannot schedule an empty pyramid");
  const auto& top = pools.front();
  if (top.sample_ids.empty()) throw InvalidArgument("top pool '" + top.pool_id + "' is empty");

  ComputeSchedule s;
  s.mode = mode;
  s.k = k;
  s.target = k * top.sample_ids.size();
  if (mode == ScheduleMode::repetitive) {
    s.samples.reserve(s.target);
    for (std::size_t pass = 0; pass < k; ++pass) {
      auto ids = top.sample_ids;
      Rng rng(derive_seed(seed, {"pass", std::to_string(pass)}));
      shuffle(std::span<std::string>(ids), rng);
      s.samples.insert(s.samples.end(), std::make_move_iterator(ids.begin()), std::make_move_iterator(ids.end()));
      s.stream.push_back(ScheduleEntry{top.pool_id, pass, top.sample_ids.size()});
    }
    s.total = s.samples.size();
    return s;
  }

  const auto index = build_id_index(dataset);
  std::unordered_set<std::string> seen;
  for (const auto& pool : pools) {
    if (s.samples.size() == s.target) break;
    ScheduleEntry entry{pool.pool_id, 0, 0};
    for (const auto& id : pool.sample_ids) {
      if (s.samples.size() == s.target) break;
      auto it = index.find(id);
      if (it == index.end()) throw InvalidArgument("pool '" + pool.pool_id + "' names unknown sample '" + id + "'");
      if (seen.insert(dedup_key(dataset.samples[it->second])).second) {
        s.samples.push_back(id);
        ++entry.count;
      }
    }
    if (entry.count > 0) s.stream.push_back(std::move(entry));
  }
  s.total = s.samples.size();
  if (s.total < s.target) {
    s.warnings.push_back("non-repetitive schedule truncated: " + std::to_string(s.total) +
                         " unique samples available, " + std::to_string(s.target) + " requested");
  }
  return s;
}

}  // namespace dms
