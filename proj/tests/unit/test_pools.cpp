#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "dms/core/digest.hpp"
#include "dms/core/error.hpp"
#include "dms/ops/filter.hpp"
#include "dms/pools/compose.hpp"
#include "dms/pools/dedup.hpp"
#include "dms/pools/pyramid.hpp"
#include "dms/pools/random_control.hpp"
#include "dms/pools/schedule.hpp"
#include "dms/pools/tertiles.hpp"
#include "test_support.hpp"

namespace dms {
namespace {

using testing::stat_dataset;

std::vector<double> iota_values(int from, int to) {
  std::vector<double> v;
  for (int i = from; i <= to; ++i) v.push_back(i);
  return v;
}

std::set<double> stat_values(const Dataset& d, const DataPool& p, const std::string& stat) {
  const auto idx = build_id_index(d);
  std::set<double> out;
  for (const auto& id : p.sample_ids) out.insert(d.samples[idx.at(id)].stats.at(stat));
  return out;
}

OperatorConfig op(const std::string& name, const std::string& stat, KeepRange r) {
  return OperatorConfig{name, {{"stat_name", stat}}, r, std::nullopt};
}

TEST(Tertiles, ExactThirds) {
  const auto d = stat_dataset("s", iota_values(1, 9));
  const auto r = split_tertiles(d, "op", "s", 3, 1);
  ASSERT_EQ(r.pools.size(), 3u);
  EXPECT_EQ(stat_values(d, r.pools[0], "s"), (std::set<double>{1, 2, 3}));
  EXPECT_EQ(stat_values(d, r.pools[1], "s"), (std::set<double>{4, 5, 6}));
  EXPECT_EQ(stat_values(d, r.pools[2], "s"), (std::set<double>{7, 8, 9}));
  EXPECT_EQ(r.boundaries.cuts, (std::vector<double>{3, 6}));
  EXPECT_EQ(r.pools[2].split_label, SplitLabel::high);
  EXPECT_EQ(r.pools[0].pool_id, "op/low");
}

TEST(Tertiles, RemainderGoesLowFirst) {
  const auto d = stat_dataset("s", iota_values(1, 10));
  const auto r = split_tertiles(d, "op", "s", 100, 1);
  EXPECT_EQ(r.group_sizes, (std::vector<std::size_t>{4, 3, 3}));
  EXPECT_TRUE(r.pools[0].is_short());
  EXPECT_EQ(r.pools[0].declared_size, 100u);
  const auto r11 = split_tertiles(stat_dataset("s", iota_values(1, 11)), "op", "s", 100, 1);
  EXPECT_EQ(r11.group_sizes, (std::vector<std::size_t>{4, 4, 3}));
}

TEST(Tertiles, TiesBreakById) {
  const auto d = stat_dataset("s", std::vector<double>(6, 1.0));
  const auto r = split_tertiles(d, "op", "s", 2, 1);
  EXPECT_EQ(r.pools[0].sample_ids, (std::vector<std::string>{"00000000", "00000001"}));
  EXPECT_EQ(r.pools[1].sample_ids, (std::vector<std::string>{"00000002", "00000003"}));
  EXPECT_EQ(r.pools[2].sample_ids, (std::vector<std::string>{"00000004", "00000005"}));
}

TEST(Tertiles, DownsamplesToTargetDeterministically) {
  const auto d = stat_dataset("s", iota_values(1, 300));
  const auto a = split_tertiles(d, "op", "s", 40, 7);
  const auto b = split_tertiles(d, "op", "s", 40, 7);
  for (int g = 0; g < 3; ++g) {
    EXPECT_EQ(a.pools[g].actual_size(), 40u);
    EXPECT_EQ(a.pools[g].sample_ids, b.pools[g].sample_ids);
  }
}

TEST(Tertiles, KWaySplits) {
  const auto d = stat_dataset("s", iota_values(1, 10));
  const auto r = split_buckets(d, "op", "s", 10, 1, 5);
  EXPECT_EQ(r.pools.size(), 5u);
  EXPECT_EQ(r.pools[4].pool_id, "op/b4");
  EXPECT_THROW(split_buckets(d, "op", "s", 10, 1, 6), InvalidArgument);
  EXPECT_THROW(split_buckets(d, "op", "s", 0, 1, 3), InvalidArgument);
  EXPECT_THROW(split_buckets(d, "op", "missing", 1, 1, 3), InvalidArgument);
}

TEST(Tertiles, KeepRangeReselectsGroup) {
  const auto d = stat_dataset("s", {5, 1, 1, 2, 9, 9, 3, 8, 7});
  const auto r = split_tertiles(d, "op", "s", 100, 1);
  for (int b = 0; b < 3; ++b) {
    auto p = apply_filter(d, "op", "s", r.boundaries.keep_range(b));
    std::sort(p.sample_ids.begin(), p.sample_ids.end());
    auto q = r.pools[b].sample_ids;
    std::sort(q.begin(), q.end());
    EXPECT_EQ(p.sample_ids, q) << b;
  }
}

TEST(Tertiles, TieAtCutFiltersIntoLowerRange) {
  const auto d = stat_dataset("s", {5, 1, 1, 2, 9, 9, 3, 7, 7});
  const auto r = split_tertiles(d, "op", "s", 100, 1);
  EXPECT_EQ(r.boundaries.cuts, (std::vector<double>{2, 7}));
  EXPECT_EQ(r.pools[2].sample_ids, (std::vector<std::string>{"00000004", "00000005", "00000008"}));
  const auto mid = apply_filter(d, "op", "s", r.boundaries.keep_range(1));
  EXPECT_EQ(mid.sample_ids, (std::vector<std::string>{"00000000", "00000006", "00000007", "00000008"}));
  const auto high = apply_filter(d, "op", "s", r.boundaries.keep_range(2));
  EXPECT_EQ(high.sample_ids, (std::vector<std::string>{"00000004", "00000005"}));
}

TEST(RandomControl, FullSizeIsPermutation) {
  const auto d = stat_dataset("s", iota_values(1, 50));
  auto p = sample_random_control(d, 50, 3);
  EXPECT_EQ(p.split_label, SplitLabel::random);
  EXPECT_TRUE(p.provenance.empty());
  std::sort(p.sample_ids.begin(), p.sample_ids.end());
  std::vector<std::string> all;
  for (const auto& s : d.samples) all.push_back(s.id);
  EXPECT_EQ(p.sample_ids, all);
}

TEST(RandomControl, SeedDeterminism) {
  const auto d = stat_dataset("s", iota_values(1, 10000));
  const auto a = sample_random_control(d, 3000, 1);
  EXPECT_EQ(a.sample_ids, sample_random_control(d, 3000, 1).sample_ids);
  EXPECT_NE(pool_content_digest(a.sample_ids), pool_content_digest(sample_random_control(d, 3000, 2).sample_ids));
  EXPECT_THROW(sample_random_control(d, 10001, 1), InvalidArgument);
}

TEST(Compose, IntervalLogic) {
  Dataset d;
  d.samples.push_back({"keep", "", {}, {{"a", 8}, {"b", 2}}});
  d.samples.push_back({"drop", "", {}, {{"a", 8}, {"b", 5}}});
  const auto reg = OpRegistry::with_builtins();
  Recipe r{{op("A", "a", KeepRange::make(7, kInf)), op("B", "b", KeepRange::make(-kInf, 3))},
           RecipeOrigin::manual};
  const auto p = compose_recipe(d, r, reg);
  EXPECT_EQ(p.sample_ids, std::vector<std::string>{"keep"});
  EXPECT_EQ(p.provenance.size(), 2u);
  EXPECT_EQ(p.provenance[0].op_name, "A");
  EXPECT_EQ(p.split_label, SplitLabel::composed);
  EXPECT_EQ(p.pyramid_level, 2);
}

TEST(Compose, SingleOpEqualsFilter) {
  const auto d = stat_dataset("s", {4, 1, 3, 2, 5});
  const auto reg = OpRegistry::with_builtins();
  const auto range = KeepRange::make(2, 4);
  const auto p = compose_recipe(d, Recipe{{op("F", "s", range)}, RecipeOrigin::manual}, reg);
  EXPECT_EQ(p.sample_ids, apply_filter(d, "F", "s", range).sample_ids);
}

TEST(Compose, FreezeFromBoundaries) {
  SplitBoundaries b{"F", "s", {3, 6}, "digest"};
  OperatorConfig c{"F", {}, std::nullopt, 2};
  const auto frozen = freeze_recipe(Recipe{{c}, RecipeOrigin::top_k}, {{"F", b}});
  EXPECT_EQ(frozen.ops[0].keep_range, b.keep_range(2));
  EXPECT_THROW(freeze_recipe(Recipe{{OperatorConfig{"G", {}, std::nullopt, 1}}, RecipeOrigin::top_k}, {{"F", b}}),
               InvalidArgument);
  EXPECT_THROW(compose_recipe(stat_dataset("s", {1}), Recipe{{c}, RecipeOrigin::top_k}, OpRegistry::with_builtins()),
               InvalidArgument);
}

TEST(Pyramid, ThreeOpsGiveSevenPools) {
  const auto d = stat_dataset("s", iota_values(1, 30));
  Dataset dd = d;
  for (auto& s : dd.samples) {
    s.stats["t"] = static_cast<double>(std::stoi(s.id) % 7);
    s.stats["u"] = static_cast<double>(std::stoi(s.id) % 5);
  }
  const auto reg = OpRegistry::with_builtins();
  const auto p = build_pyramid(dd,
                               {op("A", "s", KeepRange::make(10, kInf)), op("B", "t", KeepRange::make(2, kInf)),
                                op("C", "u", KeepRange::make(-kInf, 3))},
                               reg);
  ASSERT_EQ(p.pools.size(), 7u);
  EXPECT_EQ(p.masks.front(), 7u);
  EXPECT_EQ(p.top().pyramid_level, 3);
  for (std::size_t i = 0; i < p.pools.size(); ++i) {
    for (std::size_t j = 0; j < p.pools.size(); ++j) {
      if ((p.masks[i] & p.masks[j]) == p.masks[i] && i != j) {
        EXPECT_GE(p.pools[i].actual_size(), p.pools[j].actual_size());
      }
    }
  }
}

TEST(Pyramid, RejectsTooManyOps) {
  const auto d = stat_dataset("s", {1});
  std::vector<OperatorConfig> ops;
  for (int i = 0; i < 6; ++i) ops.push_back(op("op" + std::to_string(i), "s", KeepRange::all()));
  EXPECT_THROW(build_pyramid(d, ops, OpRegistry::with_builtins()), InvalidArgument);
  EXPECT_THROW(build_pyramid(d, {}, OpRegistry::with_builtins()), InvalidArgument);
}

DataPool pool_of(const std::string& id, std::size_t from, std::size_t to) {
  DataPool p;
  p.pool_id = id;
  for (std::size_t i = from; i < to; ++i) p.sample_ids.push_back(generated_id(i));
  return p;
}

TEST(Dedup, IdenticalDisjointAndOverlap) {
  const auto d = stat_dataset("s", std::vector<double>(2000, 0.0));
  const auto a = pool_of("a", 0, 1000);
  EXPECT_EQ(dedup_exact(d, {a, a}).actual_size(), 1000u);
  EXPECT_EQ(dedup_exact(d, {pool_of("x", 0, 500), pool_of("y", 500, 900)}).actual_size(), 900u);
  // Second pool shares 300 samples with the first.
  const auto merged = dedup_exact(d, {a, pool_of("b", 700, 1700)});
  EXPECT_EQ(merged.actual_size(), 1700u);
  EXPECT_EQ(merged.split_label, SplitLabel::merged);
  EXPECT_EQ(merged.sources, (std::vector<std::string>{"a", "b"}));
}

TEST(Dedup, EqualTextCountsAsDuplicate) {
  Dataset d;
  d.samples.push_back({"1", "café", {}, {}});
  d.samples.push_back({"2", "café", {}, {}});
  d.samples.push_back({"3", "café", {{"image", "a.png"}}, {}});
  DataPool p;
  p.pool_id = "p";
  p.sample_ids = {"1", "2", "3"};
  EXPECT_EQ(dedup_exact(d, {p}).sample_ids, (std::vector<std::string>{"1", "3"}));
  p.sample_ids = {"nope"};
  EXPECT_THROW(dedup_exact(d, {p}), InvalidArgument);
}

TEST(Schedule, RepetitiveTotals) {
  const auto d40 = stat_dataset("s", std::vector<double>(40000, 0.0));
  const auto s40 = schedule_compute(d40, std::vector<DataPool>{pool_of("top", 0, 40000)}, 10,
                                    ScheduleMode::repetitive, 1);
  EXPECT_EQ(s40.total, 400000u);
  EXPECT_EQ(s40.samples.size(), 400000u);
  EXPECT_EQ(s40.stream.size(), 10u);
  EXPECT_FALSE(s40.truncated());

  const auto d159 = stat_dataset("s", std::vector<double>(159000, 0.0));
  const auto s159 = schedule_compute(d159, std::vector<DataPool>{pool_of("top", 0, 159000)}, 4,
                                     ScheduleMode::repetitive, 1);
  EXPECT_EQ(s159.total, 636000u);
}

TEST(Schedule, PassesAreShuffledIndependently) {
  const auto d = stat_dataset("s", std::vector<double>(100, 0.0));
  const auto s = schedule_compute(d, std::vector<DataPool>{pool_of("top", 0, 100)}, 2, ScheduleMode::repetitive, 1);
  const std::vector<std::string> first(s.samples.begin(), s.samples.begin() + 100);
  const std::vector<std::string> second(s.samples.begin() + 100, s.samples.end());
  EXPECT_NE(first, second);
  EXPECT_TRUE(std::is_permutation(first.begin(), first.end(), second.begin()));
}

TEST(Schedule, KOneIsTopPoolInBothModes) {
  const auto d = stat_dataset("s", std::vector<double>(100, 0.0));
  const std::vector<DataPool> pools{pool_of("top", 0, 30), pool_of("lower", 0, 80)};
  for (auto mode : {ScheduleMode::repetitive, ScheduleMode::non_repetitive}) {
    const auto s = schedule_compute(d, pools, 1, mode, 4);
    EXPECT_EQ(s.total, 30u);
    std::set<std::string> got(s.samples.begin(), s.samples.end());
    std::set<std::string> want(pools[0].sample_ids.begin(), pools[0].sample_ids.end());
    EXPECT_EQ(got, want);
  }
}

TEST(Schedule, NonRepetitiveMatchesOrTruncates) {
  const auto d = stat_dataset("s", std::vector<double>(100, 0.0));
  const std::vector<DataPool> pools{pool_of("top", 0, 20), pool_of("mid", 0, 50), pool_of("low", 30, 70)};
  const auto ok = schedule_compute(d, pools, 3, ScheduleMode::non_repetitive, 4);
  EXPECT_EQ(ok.total, 60u);
  EXPECT_TRUE(ok.warnings.empty());
  EXPECT_EQ(std::set<std::string>(ok.samples.begin(), ok.samples.end()).size(), 60u);
  const auto cut = schedule_compute(d, pools, 5, ScheduleMode::non_repetitive, 4);
  EXPECT_EQ(cut.total, 70u);
  EXPECT_EQ(cut.target, 100u);
  EXPECT_TRUE(cut.truncated());
  ASSERT_EQ(cut.warnings.size(), 1u);
}

TEST(Schedule, RejectsBadInputs) {
  const auto d = stat_dataset("s", {1});
  EXPECT_THROW(schedule_compute(d, std::vector<DataPool>{pool_of("t", 0, 1)}, 0, ScheduleMode::repetitive, 1),
               InvalidArgument);
  EXPECT_THROW(schedule_compute(d, std::vector<DataPool>{}, 1, ScheduleMode::repetitive, 1), InvalidArgument);
  EXPECT_THROW(schedule_compute(d, std::vector<DataPool>{pool_of("t", 0, 0)}, 1, ScheduleMode::repetitive, 1),
               InvalidArgument);
}

}  // namespace
}  // namespace dms
