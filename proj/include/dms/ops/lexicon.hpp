#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>

namespace dms {

// A set of lowercase terms: stopwords, flagged words, action verbs.
class LexiconAsset {
 public:
  // One term per line, '#' starts a comment, blank lines ignored. Terms are
  // NFC-normalized and lowercased. Throws IoError if unreadable and
  // InvalidArgument if empty or a term contains whitespace.
  static LexiconAsset load(const std::filesystem::path& path);
  static LexiconAsset parse(std::string_view content, std::string source = "<memory>");
  static LexiconAsset from_terms(std::initializer_list<std::string_view> terms);

  bool contains(std::string_view lowered) const { return terms_.contains(std::string(lowered)); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::string& source() const noexcept { return source_; }

 private:
  std::unordered_set<std::string> terms_;
  std::string source_;
};

}  // namespace dms
