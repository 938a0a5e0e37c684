#pragma once

#include <span>
#include <string>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

struct TokenCount {
  std::string token;
  std::size_t count = 0;
};

struct DiversityReport {
  std::size_t documents = 0;
  std::size_t total_tokens = 0;
  std::size_t distinct_tokens = 0;
  double entropy = 0.0;  // nats
  std::vector<TokenCount> top_tokens;  // by count, then token
};

// -sum p log p in nats over the given counts. Throws InvalidArgument when
// the counts sum to zero.
double entropy_from_counts(std::span<const std::size_t> counts);

// Entropy of the lowercased whitespace-token distribution over all texts.
// Throws InvalidArgument when there are no tokens.
double word_entropy(const std::vector<std::string>& texts);

DiversityReport diversity_report(const std::vector<std::string>& texts, std::size_t top_n = 50);

Json to_json(const DiversityReport& report);

}  // namespace dms
