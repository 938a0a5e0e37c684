#include "dms/core/validate.hpp"

#include <cmath>
#include <map>

namespace dms {

ValidationReport validate_dataset(const Dataset& dataset) {
  ValidationReport report;
  report.sample_count = dataset.samples.size();
  std::map<std::string_view, std::size_t> seen;
  for (const auto& s : dataset.samples) {
    if (++seen[s.id] == 2) report.duplicate_ids.push_back(s.id);
    for (const auto& [name, v] : s.stats) {
      if (!std::isfinite(v)) report.non_finite_stats.emplace_back(s.id, name);
    }
    if (s.text.empty()) report.empty_texts.push_back(s.id);
  }
  return report;
}

Json to_json(const ValidationReport& report) {
  Json non_finite = Json::array();
  for (const auto& [id, stat] : report.non_finite_stats) {
    non_finite.push_back(Json{{"id", id}, {"stat", stat}});
  }
  return Json{{"valid", report.valid()},
              {"sample_count", report.sample_count},
              {"duplicate_ids", report.duplicate_ids},
              {"non_finite_stats", std::move(non_finite)},
              {"empty_texts", report.empty_texts}};
}

}  // namespace dms
