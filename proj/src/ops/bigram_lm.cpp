#include "dms/ops/bigram_lm.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/ops/text.hpp"

namespace dms {

BigramLanguageModel BigramLanguageModel::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

BigramLanguageModel BigramLanguageModel::parse(std::string_view content) {
  BigramLanguageModel lm;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError("expected prev<TAB>word<TAB>count", line_no);
    std::string_view count_sv = std::string_view(line).substr(t2 + 1);
    std::uint64_t count = 0;
    auto [ptr, ec] = std::from_chars(count_sv.data(), count_sv.data() + count_sv.size(), count);
    if (ec != std::errc{} || ptr != count_sv.data() + count_sv.size()) {
      throw ParseError("bigram count is not a non-negative integer", line_no);
    }
    lm.add(line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), count);
  }
  lm.finalize();
  return lm;
}

void BigramLanguageModel::add(std::string_view prev, std::string_view word, std::uint64_t count) {
  if (word == kStart) throw InvalidArgument("the start sentinel cannot be predicted");
  std::string p(prev), w(word);
  bigrams_[p][w] += count;
  context_[p] += count;
  if (p != kStart) vocab_.insert(p);
  vocab_.insert(w);
  vocab_.insert(std::string(kUnknown));
}

void BigramLanguageModel::finalize() {
  vocab_.insert(std::string(kUnknown));
  if (vocab_.size() < 2) throw InvalidArgument("bigram model needs a vocabulary of at least 2");
}

std::uint64_t BigramLanguageModel::bigram_count(std::string_view prev, std::string_view word) const {
  auto it = bigrams_.find(std::string(prev));
  if (it == bigrams_.end()) return 0;
  auto jt = it->second.find(std::string(word));
  return jt == it->second.end() ? 0 : jt->second;
}

std::uint64_t BigramLanguageModel::context_count(std::string_view prev) const {
  auto it = context_.find(std::string(prev));
  return it == context_.end() ? 0 : it->second;
}

std::string_view BigramLanguageModel::map_token(std::string_view word) const {
  auto it = vocab_.find(std::string(word));
  return it == vocab_.end() ? kUnknown : std::string_view(*it);
}

double BigramLanguageModel::probability(std::string_view prev, std::string_view word) const {
  const double num = static_cast<double>(bigram_count(prev, word)) + 1.0;
  const double den =
      static_cast<double>(context_count(prev)) + static_cast<double>(vocab_.size());
  return num / den;
}

double BigramLanguageModel::perplexity(std::string_view text) const {
  auto tokens = text::whitespace_tokens(text::normalize_lower_utf8(text));
  if (tokens.empty()) throw InvalidArgument("perplexity is undefined for text with zero tokens");
  double log_sum = 0.0;
  std::string_view prev = kStart;
  for (const auto& tok : tokens) {
    std::string_view w = map_token(tok);
    log_sum += std::log(probability(prev, w));
    prev = w;
  }
  return std::exp(-log_sum / static_cast<double>(tokens.size()));
}

double perplexity_from_probabilities(std::span<const double> probabilities) {
  if (probabilities.empty()) throw InvalidArgument("perplexity is undefined for zero tokens");
  double log_sum = 0.0;
  for (double p : probabilities) {
    if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("token probability outside (0, 1]");
    log_sum += std::log(p);
  }
  return std::exp(-log_sum / static_cast<double>(probabilities.size()));
}

}  // namespace dms
