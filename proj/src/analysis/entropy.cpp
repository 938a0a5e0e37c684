#include "dms/analysis/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "dms/core/error.hpp"
#include "dms/ops/text.hpp"

namespace dms {

namespace {

std::unordered_map<std::string, std::size_t> token_counts(const std::vector<std::string>& texts) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& t : texts) {
    for (auto& tok : text::whitespace_tokens(text::normalize_lower_utf8(t))) ++counts[std::move(tok)];
  }
  return counts;
}

}  // namespace

double entropy_from_counts(std::span<const std::size_t> counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total == 0.0) throw InvalidArgument("entropy of an empty distribution is undefined");
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return h;
}

double word_entropy(const std::vector<std::string>& texts) {
  return diversity_report(texts, 0).entropy;
}

DiversityReport diversity_report(const std::vector<std::string>& texts, std::size_t top_n) {
  const auto counts = token_counts(texts);
  if (counts.empty()) throw InvalidArgument("no tokens to measure");
  std::vector<TokenCount> sorted;
  sorted.reserve(counts.size());
  for (const auto& [tok, c] : counts) sorted.push_back(TokenCount{tok, c});
  std::sort(sorted.begin(), sorted.end(), [](const TokenCount& a, const TokenCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.token < b.token;
  });
  // Summation in sorted order keeps the value independent of hash order.
  std::vector<std::size_t> values;
  values.reserve(sorted.size());
  DiversityReport r;
  for (const auto& tc : sorted) {
    values.push_back(tc.count);
    r.total_tokens += tc.count;
  }
  r.documents = texts.size();
  r.distinct_tokens = sorted.size();
  r.entropy = entropy_from_counts(values);
  sorted.resize(std::min(top_n, sorted.size()));
  r.top_tokens = std::move(sorted);
  return r;
}

Json to_json(const DiversityReport& report) {
  Json top = Json::array();
  for (const auto& tc : report.top_tokens) top.push_back({{"token", tc.token}, {"count", tc.count}});
  return Json{{"documents", report.documents},
              {"total_tokens", report.total_tokens},
              {"distinct_tokens", report.distinct_tokens},
              {"entropy_nats", report.entropy},
              {"top_tokens", top}};
}

}  // namespace dms
