#include "dms/ops/lexicon.hpp"

#include <sstream>

#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/ops/text.hpp"

namespace dms {

LexiconAsset LexiconAsset::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

LexiconAsset LexiconAsset::parse(std::string_view content, std::string source) {
  LexiconAsset lex;
  lex.source_ = std::move(source);
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tokens = text::whitespace_tokens(line);
    if (tokens.empty()) continue;
    if (tokens.size() > 1) {
      throw InvalidArgument("lexicon " + lex.source_ + ": term '" + line + "' contains whitespace");
    }
    lex.terms_.insert(text::normalize_lower_utf8(tokens.front()));
  }
  if (lex.terms_.empty()) throw InvalidArgument("lexicon " + lex.source_ + " is empty");
  return lex;
}

LexiconAsset LexiconAsset::from_terms(std::initializer_list<std::string_view> terms) {
  std::string content;
  for (auto t : terms) {
    content += t;
    content += '\n';
  }
  return parse(content);
}

}  // namespace dms
