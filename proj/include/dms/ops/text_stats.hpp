#pragma once

#include <cstddef>
#include <string_view>

#include "dms/ops/bigram_lm.hpp"
#include "dms/ops/lexicon.hpp"
#include "dms/ops/text.hpp"

namespace dms::stats {

// Ratios are over Unicode scalars of the raw text; empty text gives 0.
double alphanumeric_ratio(std::string_view text);
double special_char_ratio(std::string_view text);

// 1 - distinct/total over sliding n-grams of the NFC-lowercased text
// (characters incl. whitespace, or whitespace tokens). No grams gives 0.
double char_ngram_repetition(std::string_view text, std::size_t n);
double word_ngram_repetition(std::string_view text, std::size_t n);

struct Counts {
  std::size_t text_length = 0;
  std::size_t word_number = 0;
  std::size_t token_number = 0;
};

Counts counts(std::string_view text, const text::Tokenizer& tokenizer = text::WhitespaceTokenizer{});

// Fraction of whitespace tokens whose lowercase form is in the lexicon.
double lexicon_ratio(std::string_view text, const LexiconAsset& lexicon);

// Occurrences of lexicon verbs among whitespace tokens.
std::size_t action_number(std::string_view text, const LexiconAsset& verbs);

}  // namespace dms::stats
