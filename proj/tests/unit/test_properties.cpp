#include <gtest/gtest.h>

#include <set>

#include "dms/analysis/improvement.hpp"
#include "dms/analysis/pearson.hpp"
#include "dms/core/digest.hpp"
#include "dms/cost/cost_model.hpp"
#include "dms/ops/compute_stats.hpp"
#include "dms/pools/schedule.hpp"
#include "oracles.hpp"
#include "pool_properties.hpp"

namespace dms {
namespace {

TEST(Properties, PoolInvariants) {
  std::vector<std::string> violations;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto v = testing::PoolPropertyChecker(seed).run();
    violations.insert(violations.end(), v.begin(), v.end());
  }
  EXPECT_TRUE(violations.empty()) << violations.size() << " violations, first: " << violations.front();
}

TEST(Properties, ScheduleTotals) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + rng.below(100);
    const auto d = testing::stat_dataset("s", std::vector<double>(n, 0.0));
    std::vector<DataPool> pools;
    const std::size_t n_pools = 1 + rng.below(4);
    std::set<std::string> all;
    for (std::size_t p = 0; p < n_pools; ++p) {
      DataPool pool;
      pool.pool_id = "p" + std::to_string(p);
      for (auto i : sample_indices(n, 1 + rng.below(n), rng)) pool.sample_ids.push_back(d.samples[i].id);
      all.insert(pool.sample_ids.begin(), pool.sample_ids.end());
      pools.push_back(std::move(pool));
    }
    const std::size_t k = 1 + rng.below(6);
    const std::size_t top = pools[0].actual_size();
    const auto rep = schedule_compute(d, pools, k, ScheduleMode::repetitive, trial);
    ASSERT_EQ(rep.total, k * top);
    ASSERT_EQ(rep.samples.size(), k * top);
    const auto non = schedule_compute(d, pools, k, ScheduleMode::non_repetitive, trial);
    ASSERT_EQ(non.target, rep.total);
    ASSERT_EQ(non.total, std::min(k * top, all.size()));
    ASSERT_EQ(non.samples.size(), non.total);
    ASSERT_EQ(std::set<std::string>(non.samples.begin(), non.samples.end()).size(), non.total);
    ASSERT_EQ(non.warnings.empty(), !non.truncated());
  }
}

TEST(Properties, PearsonMatchesDirectFormula) {
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(50);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back(rng.normal() * 10 + 3);
      y.push_back(0.5 * x.back() + rng.normal());
    }
    EXPECT_NEAR(pearson(x, y), testing::pearson_direct(x, y), 1e-9);
  }
}

TEST(Properties, ImprovementIdentities) {
  Rng rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    MetricVector s, b;
    const std::size_t m = 1 + rng.below(5);
    for (std::size_t i = 0; i < m; ++i) {
      s.metrics["m" + std::to_string(i)] = rng.uniform() * 100;
      b.metrics["m" + std::to_string(i)] = 1 + rng.uniform() * 100;
    }
    EXPECT_EQ(relative_improvement(b, b), 0.0);
    const double lambda = 0.01 + rng.uniform() * 50;
    MetricVector sl = s, bl = b;
    for (auto& [_, v] : sl.metrics) v *= lambda;
    for (auto& [_, v] : bl.metrics) v *= lambda;
    EXPECT_NEAR(relative_improvement(sl, bl), relative_improvement(s, b), 1e-9);
  }
}

TEST(Properties, WardMatchesExhaustiveOnSeparatedBlobs) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(7);
    const std::size_t k = 1 + rng.below(n);
    const auto rows = testing::separated_blobs(rng, n, k);
    const auto got = testing::canonical(ward_cluster_features(rows, k).labels);
    EXPECT_EQ(got, testing::exhaustive_ward(rows, k)) << "n=" << n << " k=" << k;
  }
}

TEST(Properties, HoeffdingAndBreakevenMonotone) {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const double eps = rng.uniform() * 2, width = 0.1 + rng.uniform() * 3;
    const double b = hoeffding_bound({eps, 0, width});
    EXPECT_GT(b, 0.0);
    EXPECT_LE(b, 1.0);
    EXPECT_LE(hoeffding_bound({eps + 0.1, 0, width}), b);
    EXPECT_GE(hoeffding_bound({eps, 0, width + 0.5}), b);
    CostParams p;
    p.M = 1 + rng.below(5);
    p.m = rng.below(100);
    p.r = 0.01 + rng.uniform() * 0.99;
    const bool pref = breakeven(p).sandbox_preferred;
    EXPECT_EQ(pref, 1.0 + static_cast<double>(p.m) * p.r <= static_cast<double>(p.M));
    CostParams more = p;
    more.r = std::min(1.0, p.r * 1.5);
    if (!pref) EXPECT_FALSE(breakeven(more).sandbox_preferred);
  }
}

TEST(Properties, ComputeStatsDeterministic) {
  const auto reg = OpRegistry::with_builtins();
  const std::vector<StatSpec> specs{{"text_length_filter", "", {}},
                                    {"special_characters_filter", "", {}},
                                    {"word_repetition_filter", "", {{"rep_len", 1}}}};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    Dataset d;
    const std::size_t n = 1 + rng.below(300);
    for (std::size_t i = 0; i < n; ++i) d.samples.push_back({generated_id(i), testing::random_text(rng, 40), {}, {}});
    EXPECT_EQ(dataset_digest(compute_stats(d, specs, reg)), dataset_digest(compute_stats_serial(d, specs, reg)));
  }
}

}  // namespace
}  // namespace dms
