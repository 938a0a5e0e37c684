#pragma once

#include <string>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

struct ValidationReport {
  std::size_t sample_count = 0;
  std::vector<std::string> duplicate_ids;       // each repeated id once
  std::vector<std::pair<std::string, std::string>> non_finite_stats;  // (id, stat)
  std::vector<std::string> empty_texts;         // ids

  bool valid() const noexcept {
    return duplicate_ids.empty() && non_finite_stats.empty() && empty_texts.empty();
  }
};

ValidationReport validate_dataset(const Dataset& dataset);

Json to_json(const ValidationReport& report);

}  // namespace dms
