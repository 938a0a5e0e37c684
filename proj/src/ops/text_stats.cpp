#include "dms/ops/text_stats.hpp"

#include <string>
#include <unordered_map>
#include <unordered_set>

namespace dms::stats {

namespace {

template <class Pred>
double scalar_ratio(std::string_view text, Pred pred) {
  const auto cps = text::code_points(text);
  if (cps.empty()) return 0.0;
  std::size_t hits = 0;
  for (char32_t c : cps) hits += pred(c) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(cps.size());
}

double repetition(std::u32string_view seq, std::size_t n) {
  if (n == 0 || seq.size() < n) return 0.0;
  const std::size_t total = seq.size() - n + 1;
  std::unordered_set<std::u32string_view> distinct;
  distinct.reserve(total);
  for (std::size_t i = 0; i < total; ++i) distinct.insert(seq.substr(i, n));
  return 1.0 - static_cast<double>(distinct.size()) / static_cast<double>(total);
}

}  // namespace

double alphanumeric_ratio(std::string_view text) {
  return scalar_ratio(text, [](char32_t c) { return text::is_alnum(c); });
}

double special_char_ratio(std::string_view text) {
  return scalar_ratio(text, [](char32_t c) { return !text::is_alnum(c) && !text::is_space(c); });
}

double char_ngram_repetition(std::string_view text, std::size_t n) {
  const auto cps = text::normalize_lower(text);
  return repetition(cps, n);
}

double word_ngram_repetition(std::string_view text, std::size_t n) {
  const auto tokens = text::whitespace_tokens(std::u32string_view(text::normalize_lower(text)));
  // Intern tokens so word n-grams become code-unit n-grams.
  std::unordered_map<std::u32string_view, char32_t> ids;
  std::u32string seq;
  seq.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto [it, _] = ids.emplace(t, static_cast<char32_t>(ids.size()));
    seq.push_back(it->second);
  }
  return repetition(seq, n);
}

Counts counts(std::string_view text, const text::Tokenizer& tokenizer) {
  Counts c;
  const auto cps = text::code_points(text);
  c.text_length = cps.size();
  c.word_number = text::whitespace_tokens(std::u32string_view(cps)).size();
  c.token_number = tokenizer.count(text);
  return c;
}

double lexicon_ratio(std::string_view text, const LexiconAsset& lexicon) {
  const auto tokens = text::whitespace_tokens(std::u32string_view(text::normalize_lower(text)));
  if (tokens.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& t : tokens) hits += lexicon.contains(text::to_utf8(t)) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(tokens.size());
}

std::size_t action_number(std::string_view text, const LexiconAsset& verbs) {
  std::size_t n = 0;
  for (const auto& t : text::whitespace_tokens(std::u32string_view(text::normalize_lower(text)))) {
    n += verbs.contains(text::to_utf8(t)) ? 1 : 0;
  }
  return n;
}

}  // namespace dms::stats
