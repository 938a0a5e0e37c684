#include "dms/orchestrator/sweep.hpp"

#include <set>

#include "dms/core/error.hpp"

namespace dms {

SweepGrid expand_grid(const Json& params) {
  const bool has_grid = params.contains("grid");
  const bool has_points = params.contains("points");
  if (has_grid == has_points) throw InvalidArgument("a sweep needs exactly one of params.grid or params.points");

  std::vector<Json> raw;
  if (has_grid) {
    const auto& grid = params.at("grid");
    if (!grid.is_object() || grid.empty()) throw InvalidArgument("empty grid");
    raw.push_back(Json::object());
    for (const auto& [key, values] : grid.items()) {
      if (!values.is_array() || values.empty()) throw InvalidArgument("empty grid: '" + key + "' has no values");
      std::vector<Json> next;
      for (const auto& partial : raw) {
        for (const auto& v : values) {
          Json p = partial;
          p[key] = v;
          next.push_back(std::move(p));
        }
      }
      raw = std::move(next);
    }
  } else {
    const auto& points = params.at("points");
    if (!points.is_array() || points.empty()) throw InvalidArgument("empty grid");
    for (const auto& p : points) {
      if (!p.is_object()) throw InvalidArgument("each sweep point must be a mapping");
      raw.push_back(p);
    }
  }

  SweepGrid out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!seen.insert(raw[i].dump()).second) {
      out.warnings.push_back("duplicate sweep point " + raw[i].dump() + " at position " + std::to_string(i) +
                             " dropped");
      continue;
    }
    out.points.push_back(std::move(raw[i]));
  }
  return out;
}

}  // namespace dms
