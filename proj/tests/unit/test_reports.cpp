#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/reports/bundle.hpp"
#include "dms/reports/csv.hpp"
#include "dms/reports/reports.hpp"
#include "test_support.hpp"

namespace dms {
namespace {

TEST(Csv, NumbersRoundTrip) {
  for (double v : {0.1, 66.38, -2.05, 1e-300, 123456789.125, 0.0}) {
    EXPECT_EQ(std::stod(csv::format_number(v)), v);
  }
  EXPECT_EQ(csv::format_number(66.38), "66.38");
  EXPECT_EQ(csv::format_number(10.0), "10");
}

TEST(Csv, QuotingRoundTrip) {
  const std::vector<std::string> fields{"plain", "a,b", "say \"hi\"", ""};
  const auto line = csv::row(fields);
  EXPECT_EQ(line, "plain,\"a,b\",\"say \"\"hi\"\"\",\n");
  EXPECT_EQ(csv::parse_row(line.substr(0, line.size() - 1)), fields);
}

TEST(RankingCsv, FirstRowIsBestOp) {
  std::vector<OpRankRow> rows{make_rank_row("Language Score", {49.90, 0.85, -1.43}),
                              make_rank_row("Image NSFW", {7.13, 18.44, 66.38}),
                              make_rank_row("Text Action", {59.90, 0.29, -2.05})};
  const auto csv_text = ranking_csv(rank_ops(rows), 3);
  const auto second_line = csv_text.substr(csv_text.find('\n') + 1);
  EXPECT_EQ(second_line.substr(0, second_line.find('\n')), "Image NSFW,7.13,18.44,66.38,high,66.38");
  const auto back = parse_ranking_csv(csv_text);
  EXPECT_EQ(back, rank_ops(rows));
}

TEST(RankingCsv, ParsesPlainTables) {
  const auto rows = parse_ranking_csv("op,low,mid,high\r\nA,1,2,-3\r\nB,5,0,0\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].changes, (std::vector<double>{1, 2, -3}));
  EXPECT_EQ(rows[0].best_split, 1);
  EXPECT_EQ(rows[1].best_value, 5.0);
  EXPECT_THROW(parse_ranking_csv("op\nA\n"), ParseError);
  EXPECT_THROW(parse_ranking_csv("op,low\nA,x\n"), ParseError);
}

TEST(RankingCsv, SingleOpAndTies) {
  const auto csv_text = ranking_csv({make_rank_row("x", {1, 1, 1})}, 3);
  EXPECT_EQ(csv_text, "op,low,mid,high,best_split,best_value\nx,1,1,1,low,1\n");
}

TEST(RankingCsv, EmitFromTrials) {
  MetricVector base, a, b, c;
  base.metrics = {{"m", 4}};
  a.metrics = {{"m", 5}};
  b.metrics = {{"m", 3}};
  c.metrics = {{"m", 4}};
  const auto out = emit_ranking({{"random", "", 0, base, true}, {"f/low", "f", 0, a, false},
                                 {"f/mid", "f", 1, b, false}, {"f/high", "f", 2, c, false}});
  EXPECT_NE(out.find("f,25,-25,0,low,25"), std::string::npos) << out;
  EXPECT_THROW(emit_ranking({{"f/low", "f", 0, a, false}}), InvalidArgument);
}

TEST(ScalingCurve, SortedRows) {
  MetricVector base;
  base.metrics = {{"m", 10}};
  std::vector<std::pair<std::size_t, MetricVector>> runs;
  for (std::size_t k : {8u, 1u, 4u, 2u}) {
    MetricVector mv;
    mv.metrics = {{"m", 10.0 + static_cast<double>(k)}};
    runs.emplace_back(k, mv);
  }
  EXPECT_EQ(emit_scaling_curve(runs, base), "k,relative_improvement\n1,10\n2,20\n4,40\n8,80\n");
  EXPECT_EQ(scaling_curve_csv({}), "k,relative_improvement\n");
}

TEST(ClusterCsv, ItemPerLine) {
  ClusterAssignment c;
  c.k = 2;
  c.labels = {0, 0, 2};
  EXPECT_EQ(clusters_csv({"a", "b", "c"}, c), "item,cluster\na,0\nb,0\nc,2\n");
}

TEST(Bundle, IndexVerifiesAndDetectsTampering) {
  TempDir dir;
  fs::create_directories(dir.path() / "sub");
  write_file_atomic(dir.path() / "a.csv", "x\n");
  write_file_atomic(dir.path() / "sub" / "b.json", "{}\n");
  write_bundle_index(dir.path());
  const auto index = build_bundle_index(dir.path());
  ASSERT_EQ(index.at("files").size(), 2u);
  EXPECT_EQ(index.at("files")[0].at("path"), "a.csv");
  EXPECT_TRUE(verify_bundle(dir.path()).empty());
  write_file_atomic(dir.path() / "a.csv", "y\n");
  write_file_atomic(dir.path() / "extra.txt", "");
  fs::remove(dir.path() / "sub" / "b.json");
  EXPECT_EQ(verify_bundle(dir.path()).size(), 3u);
}

TEST(Bundle, MissingIndexIsIoError) {
  TempDir dir;
  EXPECT_THROW(verify_bundle(dir.path()), IoError);
}

}  // namespace
}  // namespace dms
