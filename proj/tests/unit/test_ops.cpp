#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdlib>
#include <set>

#include "dms/core/digest.hpp"
#include "dms/core/error.hpp"
#include "dms/ops/bigram_lm.hpp"
#include "dms/ops/compute_stats.hpp"
#include "dms/ops/external_scorer.hpp"
#include "dms/ops/filter.hpp"
#include "dms/ops/lexicon.hpp"
#include "dms/ops/mapper.hpp"
#include "dms/ops/registry.hpp"
#include "dms/ops/text_stats.hpp"
#include "test_support.hpp"

namespace dms {
namespace {

using testing::data_path;
using testing::stat_dataset;
using testing::texts_dataset;

TEST(TextStats, AlphanumericRatio) {
  EXPECT_DOUBLE_EQ(stats::alphanumeric_ratio("ab1 ?"), 0.6);
  EXPECT_DOUBLE_EQ(stats::alphanumeric_ratio(""), 0.0);
  EXPECT_DOUBLE_EQ(stats::alphanumeric_ratio("abc"), 1.0);
  // Scalars, not bytes.
  EXPECT_DOUBLE_EQ(stats::alphanumeric_ratio("é!"), 0.5);
}

TEST(TextStats, CharRepetition) {
  EXPECT_DOUBLE_EQ(stats::char_ngram_repetition("aaaaaa", 2), 0.8);
  EXPECT_DOUBLE_EQ(stats::char_ngram_repetition("abcdef", 2), 0.0);
  EXPECT_NEAR(stats::char_ngram_repetition("abab", 2), 1.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(stats::char_ngram_repetition("ab", 5), 0.0);
  EXPECT_DOUBLE_EQ(stats::char_ngram_repetition("AAaa", 2), stats::char_ngram_repetition("aaaa", 2));
}

TEST(TextStats, WordRepetition) {
  EXPECT_DOUBLE_EQ(stats::word_ngram_repetition("a b a b a", 2), 0.5);
  EXPECT_DOUBLE_EQ(stats::word_ngram_repetition("x y z", 5), 0.0);
  EXPECT_NEAR(stats::word_ngram_repetition("w w w", 1), 2.0 / 3.0, 1e-12);
}

TEST(TextStats, Counts) {
  auto c = stats::counts("hi there");
  EXPECT_EQ(c.text_length, 8u);
  EXPECT_EQ(c.word_number, 2u);
  EXPECT_EQ(c.token_number, 2u);
  c = stats::counts("");
  EXPECT_EQ(c.text_length + c.word_number + c.token_number, 0u);
  EXPECT_EQ(stats::counts("a  b").word_number, 2u);
}

TEST(TextStats, SpecialCharRatio) {
  EXPECT_DOUBLE_EQ(stats::special_char_ratio("ab ?!"), 0.4);
  EXPECT_DOUBLE_EQ(stats::special_char_ratio("abc"), 0.0);
  EXPECT_DOUBLE_EQ(stats::special_char_ratio("!!!"), 1.0);
}

TEST(TextStats, LexiconRatio) {
  const auto lex = LexiconAsset::from_terms({"the", "on"});
  EXPECT_DOUBLE_EQ(stats::lexicon_ratio("the cat sat on the mat", lex), 0.5);
  EXPECT_DOUBLE_EQ(stats::lexicon_ratio("   ", lex), 0.0);
  EXPECT_DOUBLE_EQ(stats::lexicon_ratio("The ON", lex), 1.0);
}

TEST(TextStats, ActionNumber) {
  const auto verbs = LexiconAsset::from_terms({"run", "jump"});
  EXPECT_EQ(stats::action_number("I run and jump daily", verbs), 2u);
  EXPECT_EQ(stats::action_number("run run", LexiconAsset::from_terms({"run"})), 2u);
  EXPECT_EQ(stats::action_number("sit still", verbs), 0u);
}

// Brute-force oracle over code points with an ordered set.
double brute_char_rep(const std::u32string& s, std::size_t n) {
  if (s.size() < n) return 0.0;
  std::set<std::u32string> distinct;
  const std::size_t total = s.size() - n + 1;
  for (std::size_t i = 0; i < total; ++i) distinct.insert(s.substr(i, n));
  return 1.0 - static_cast<double>(distinct.size()) / static_cast<double>(total);
}

TEST(TextStats, CharRepetitionMatchesBruteForce) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto t = testing::random_text(rng, 10);
    for (std::size_t n : {1u, 2u, 3u, 7u}) {
      EXPECT_NEAR(stats::char_ngram_repetition(t, n), brute_char_rep(text::normalize_lower(t), n), 1e-12) << t;
    }
  }
}

TEST(Lexicon, ParsesCommentsAndCase) {
  const auto lex = LexiconAsset::load(data_path("stopwords.txt"));
  EXPECT_EQ(lex.size(), 3u);
  EXPECT_TRUE(lex.contains("a"));
  EXPECT_FALSE(lex.contains("# comment"));
  EXPECT_THROW(LexiconAsset::parse("# only\n"), InvalidArgument);
  EXPECT_THROW(LexiconAsset::load("/nonexistent/lex.txt"), IoError);
}

TEST(BigramLm, UniformProbabilities) {
  const std::array<double, 4> p{0.5, 0.5, 0.5, 0.5};
  EXPECT_DOUBLE_EQ(perplexity_from_probabilities(p), 2.0);
  const std::array<double, 2> q{0.5, 0.25};
  EXPECT_NEAR(perplexity_from_probabilities(q), 2.82843, 1e-5);
  EXPECT_THROW(perplexity_from_probabilities(std::span<const double>{}), InvalidArgument);
}

TEST(BigramLm, AddOneSmoothing) {
  const auto lm = BigramLanguageModel::parse("a\ta\t3\na\tb\t1\n");
  EXPECT_EQ(lm.vocabulary_size(), 3u);
  EXPECT_DOUBLE_EQ(lm.probability("a", "a"), 4.0 / 7.0);
  EXPECT_DOUBLE_EQ(lm.probability("a", "b"), 2.0 / 7.0);
  EXPECT_DOUBLE_EQ(lm.probability("a", "<unk>"), 1.0 / 7.0);
}

TEST(BigramLm, ConditionalsSumToOne) {
  const auto lm = BigramLanguageModel::load(data_path("bigrams.tsv"));
  for (std::string_view prev : {"<s>", "a", "b", "<unk>"}) {
    double sum = 0;
    for (std::string_view w : {"a", "b", "<unk>"}) sum += lm.probability(prev, w);
    EXPECT_NEAR(sum, 1.0, 1e-12) << prev;
  }
}

TEST(BigramLm, PerplexityMatchesHandComputation) {
  const auto lm = BigramLanguageModel::load(data_path("bigrams.tsv"));
  // <s>->a: (2+1)/(2+3); a->b: (1+1)/(4+3); b->zzz(<unk>): 1/3.
  const double expected = std::exp(-(std::log(3.0 / 5) + std::log(2.0 / 7) + std::log(1.0 / 3)) / 3);
  EXPECT_NEAR(lm.perplexity("A b zzz"), expected, 1e-12);
  EXPECT_THROW(lm.perplexity(" "), InvalidArgument);
}

TEST(BigramLm, RejectsMalformedLines) {
  try {
    BigramLanguageModel::parse("a\tb\t1\nbad line\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(BigramLanguageModel::parse("a\tb\t-1\n"), ParseError);
}

TEST(ComputeStats, AddsStatToEverySample) {
  const auto reg = OpRegistry::with_builtins();
  const auto d = texts_dataset({"a", "bb", "ccc"});
  const auto out = compute_stats(d, {StatSpec{"text_length_filter", "", {}}}, reg);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(out.samples[i].stats.at("text_length"), double(i + 1));
}

TEST(ComputeStats, EmptySpecsIsIdentity) {
  const auto reg = OpRegistry::with_builtins();
  const auto d = texts_dataset({"a", "bb"});
  EXPECT_EQ(dataset_digest(compute_stats(d, {}, reg)), dataset_digest(d));
}

TEST(ComputeStats, IdempotentAndParallelMatchesSerial) {
  const auto reg = OpRegistry::with_builtins();
  Rng rng(5);
  Dataset d;
  for (int i = 0; i < 500; ++i) d.samples.push_back({generated_id(i), testing::random_text(rng, 30), {}, {}});
  const std::vector<StatSpec> specs{
      {"text_length_filter", "", {}},
      {"alphanumeric_filter", "", {}},
      {"character_repetition_filter", "", {{"rep_len", 3}}},
      {"word_repetition_filter", "", {{"rep_len", 2}}},
      {"stopwords_filter", "", {{"lexicon", "stopwords.txt"}}},
      {"perplexity_filter", "", {{"counts", "bigrams.tsv"}}}};
  const ComputeOptions opts{DMS_TEST_DATA, 1};
  const auto a = compute_stats(d, specs, reg, opts);
  const auto b = compute_stats(a, specs, reg, opts);
  const auto c = compute_stats_serial(d, specs, reg, opts);
  EXPECT_EQ(dataset_digest(a), dataset_digest(b));
  EXPECT_EQ(dataset_digest(a), dataset_digest(c));
}

TEST(ComputeStats, RejectsBadSpecs) {
  const auto reg = OpRegistry::with_builtins();
  const auto d = texts_dataset({"x"});
  EXPECT_THROW(compute_stats(d, {{"nope_filter", "", {}}}, reg), InvalidArgument);
  EXPECT_THROW(compute_stats(d, {{"character_repetition_filter", "", {{"rep_len", "2"}}}}, reg),
               InvalidArgument);
  EXPECT_THROW(compute_stats(d, {{"text_length_filter", "", {{"bogus", 1}}}}, reg), InvalidArgument);
  EXPECT_THROW(compute_stats(d, {{"stopwords_filter", "", {}}}, reg), InvalidArgument);
  EXPECT_THROW(compute_stats(d, {{"stopwords_filter", "", {{"lexicon", "/nonexistent/l.txt"}}}}, reg), IoError);
  // Two operators writing one statistic name.
  EXPECT_THROW(compute_stats(d, {{"text_length_filter", "x", {}}, {"alphanumeric_filter", "x", {}}}, reg),
               InvalidArgument);
}

TEST(ComputeStats, ExternalScorerStat) {
  const auto reg = OpRegistry::with_builtins();
  const auto d = texts_dataset({"a", "bbb"});
  const StatSpec spec{"line_len", "line_len", {{"command", data_path("stubs/scorer.sh").string()}}};
  const auto out = compute_stats(d, {spec}, reg);
  EXPECT_LT(out.samples[0].stats.at("line_len"), out.samples[1].stats.at("line_len"));
}

class ScorerTest : public ::testing::Test {
 protected:
  void TearDown() override { unsetenv("STUB_MODE"); }
  ScorerConfig config(ScorerOutput out = ScorerOutput::stdout_stream) const {
    ScorerConfig c;
    c.command = data_path("stubs/scorer.sh").string();
    c.stat_name = "len";
    c.output = out;
    return c;
  }
  Dataset data = texts_dataset({"a", "bb", "ccc", "dddd", "eeeee"});
};

TEST_F(ScorerTest, StdoutAndEnvPathAgree) {
  const auto a = external_score(data.samples, config());
  const auto b = external_score(data.samples, config(ScorerOutput::env_path));
  ASSERT_EQ(a.size(), 5u);
  EXPECT_EQ(a, b);
}

TEST_F(ScorerTest, BatchedParallelRunsMatch) {
  auto c = config();
  c.batch_size = 2;
  c.max_parallel = 3;
  EXPECT_EQ(external_score(data.samples, c), external_score(data.samples, config()));
}

TEST_F(ScorerTest, ConstantScorer) {
  auto c = config();
  c.command = "awk -F'\"' '{print \"{\\\"id\\\":\\\"\" $4 \"\\\",\\\"score\\\":0.5}\"}'";
  for (const auto& [id, v] : external_score(data.samples, c)) EXPECT_EQ(v, 0.5) << id;
}

TEST_F(ScorerTest, MissingIdIsProtocolError) {
  setenv("STUB_MODE", "skip", 1);
  try {
    external_score(data.samples, config());
    FAIL();
  } catch (const ProtocolError& e) {
    EXPECT_NE(std::string(e.what()).find("00000000"), std::string::npos) << e.what();
  }
}

TEST_F(ScorerTest, NonzeroExitIsProcessFailure) {
  setenv("STUB_MODE", "fail", 1);
  try {
    external_score(data.samples, config());
    FAIL();
  } catch (const ProcessFailure& e) {
    EXPECT_EQ(e.exit_code(), 3);
    EXPECT_NE(e.stderr_tail().find("scorer broke"), std::string::npos);
  }
}

TEST(Filter, ClosedInterval) {
  const auto d = stat_dataset("s", {1, 2, 3, 4});
  const auto p = apply_filter(d, "f", "s", KeepRange::make(2, 3));
  EXPECT_EQ(p.sample_ids, (std::vector<std::string>{"00000001", "00000002"}));
  ASSERT_EQ(p.provenance.size(), 1u);
  EXPECT_EQ(p.provenance[0].keep_range, KeepRange::make(2, 3));
  EXPECT_EQ(apply_filter(d, "f", "s", KeepRange::all()).actual_size(), 4u);
}

TEST(Filter, MissingStatIsError) {
  const auto d = stat_dataset("s", {1});
  EXPECT_THROW(keep_indices(d, "t", KeepRange::all()), InvalidArgument);
}

TEST(Mapper, IdentityKeepsDigest) {
  const auto reg = MapperRegistry::with_builtins();
  const auto d = texts_dataset({"AbC", "x"});
  EXPECT_EQ(dataset_digest(apply_mapper(d, "identity", {}, reg)), dataset_digest(d));
}

TEST(Mapper, LowercaseClearsTextStats) {
  const auto ops = OpRegistry::with_builtins();
  const auto reg = MapperRegistry::with_builtins();
  auto d = compute_stats(texts_dataset({"AbC"}), {{"alphanumeric_filter", "", {}}}, ops);
  d.samples[0].stats["media_score"] = 1.0;
  d.stat_origin["media_score"] = {"media_op", StatInputs::media};
  const auto out = apply_mapper(d, "lowercase_text", {}, reg);
  EXPECT_EQ(out.samples[0].text, "abc");
  EXPECT_FALSE(out.samples[0].stats.contains("alnum_ratio"));
  EXPECT_TRUE(out.samples[0].stats.contains("media_score"));
}

TEST(Mapper, UnknownNameIsError) {
  EXPECT_THROW(apply_mapper(texts_dataset({"x"}), "diffusion", {}, MapperRegistry::with_builtins()),
               InvalidArgument);
}

}  // namespace
}  // namespace dms
