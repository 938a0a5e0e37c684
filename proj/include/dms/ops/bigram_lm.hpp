#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dms {

// Add-one smoothed bigram model over whitespace tokens:
//
//   p(w | v) = (count(v, w) + 1) / (count(v) + V)
//
// count(v) sums the bigram counts with context v. V is the number of
// predictable types: every word in the counts file plus the unknown
// sentinel. The start sentinel is a context only, never predicted, so each
// conditional distribution sums to one over V.
class BigramLanguageModel {
 public:
  static constexpr std::string_view kStart = "<s>";
  static constexpr std::string_view kUnknown = "<unk>";

  // Lines "prev<TAB>word<TAB>count". Throws IoError if unreadable,
  // ParseError on malformed lines, InvalidArgument if V < 2.
  static BigramLanguageModel load(const std::filesystem::path& path);
  static BigramLanguageModel parse(std::string_view content);

  void add(std::string_view prev, std::string_view word, std::uint64_t count);

  std::size_t vocabulary_size() const noexcept { return vocab_.size(); }
  std::uint64_t bigram_count(std::string_view prev, std::string_view word) const;
  std::uint64_t context_count(std::string_view prev) const;

  // Maps out-of-vocabulary words to the unknown sentinel.
  std::string_view map_token(std::string_view word) const;
  double probability(std::string_view prev, std::string_view word) const;

  // Tokens are lowercased and mapped; the first is conditioned on <s>.
  // Throws InvalidArgument for zero tokens (perplexity undefined).
  double perplexity(std::string_view text) const;

 private:
  void finalize();

  std::unordered_map<std::string, std::unordered_map<std::string, std::uint64_t>> bigrams_;
  std::unordered_map<std::string, std::uint64_t> context_;
  std::unordered_set<std::string> vocab_;  // predictable types incl. <unk>
};

// exp(-(1/T) * sum(ln p_t)) for per-token probabilities p_t.
double perplexity_from_probabilities(std::span<const double> probabilities);

}  // namespace dms
