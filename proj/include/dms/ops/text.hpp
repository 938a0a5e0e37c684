#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace dms::text {

// Unicode scalars of a UTF-8 string. Ill-formed bytes decode to U+FFFD.
std::u32string code_points(std::string_view utf8);

std::string to_utf8(std::u32string_view cps);

// NFC normalization followed by full lowercasing (root locale).
std::u32string normalize_lower(std::string_view utf8);
std::string normalize_lower_utf8(std::string_view utf8);

// NFC only.
std::string nfc(std::string_view utf8);

bool is_alnum(char32_t cp);
bool is_space(char32_t cp);

// Splits on runs of Unicode White_Space.
std::vector<std::string> whitespace_tokens(std::string_view utf8);
std::vector<std::u32string> whitespace_tokens(std::u32string_view cps);

// Token counting seam for model tokenizers. The default splits on whitespace.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::size_t count(std::string_view utf8) const = 0;
};

class WhitespaceTokenizer final : public Tokenizer {
 public:
  std::size_t count(std::string_view utf8) const override;
};

}  // namespace dms::text
