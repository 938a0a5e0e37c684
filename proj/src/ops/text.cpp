#include "dms/ops/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "dms/core/error.hpp"

namespace dms::text {

namespace {

const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) throw Error("ICU NFC normalizer unavailable");
  return *n;
}

icu::UnicodeString nfc_unicode(const icu::UnicodeString& in) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc_instance().normalize(in, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  return out;
}

std::u32string from_unicode(const icu::UnicodeString& s) {
  std::u32string out;
  out.reserve(static_cast<std::size_t>(s.length()));
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return out;
}

template <class Token>
void flush(std::vector<Token>& out, Token& cur) {
  if (!cur.empty()) {
    out.push_back(std::move(cur));
    cur.clear();
  }
}

}  // namespace

std::u32string code_points(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto len = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < len) {
    UChar32 c;
    U8_NEXT(s, i, len, c);
    out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
  }
  return out;
}

std::string to_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) {
    uint8_t buf[4];
    int32_t n = 0;
    UBool err = false;
    U8_APPEND(buf, n, 4, static_cast<UChar32>(c), err);
    if (err) {
      n = 0;
      U8_APPEND_UNSAFE(buf, n, 0xFFFD);
    }
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

std::u32string normalize_lower(std::string_view utf8) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  s = nfc_unicode(s);
  s.toLower(icu::Locale::getRoot());
  // Lowercasing can break composition in rare cases; renormalize.
  return from_unicode(nfc_unicode(s));
}

std::string normalize_lower_utf8(std::string_view utf8) { return to_utf8(normalize_lower(utf8)); }

std::string nfc(std::string_view utf8) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  std::string out;
  nfc_unicode(s).toUTF8String(out);
  return out;
}

bool is_alnum(char32_t cp) { return u_isalnum(static_cast<UChar32>(cp)); }

bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

std::vector<std::u32string> whitespace_tokens(std::u32string_view cps) {
  std::vector<std::u32string> out;
  std::u32string cur;
  for (char32_t c : cps) {
    if (is_space(c)) {
      flush(out, cur);
    } else {
      cur.push_back(c);
    }
  }
  flush(out, cur);
  return out;
}

std::vector<std::string> whitespace_tokens(std::string_view utf8) {
  std::vector<std::string> out;
  for (auto& t : whitespace_tokens(std::u32string_view(code_points(utf8)))) {
    out.push_back(to_utf8(t));
  }
  return out;
}

std::size_t WhitespaceTokenizer::count(std::string_view utf8) const {
  std::size_t n = 0;
  bool in_token = false;
  for (char32_t c : code_points(utf8)) {
    if (is_space(c)) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++n;
    }
  }
  return n;
}

}  // namespace dms::text
