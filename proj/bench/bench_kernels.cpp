#include <benchmark/benchmark.h>

#include <string>

#include "dms/analysis/pearson.hpp"
#include "dms/core/rng.hpp"
#include "dms/ops/compute_stats.hpp"

namespace {

dms::Dataset make_dataset(std::size_t n) {
  dms::Rng rng(7);
  const char* words[] = {"alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "!!", "42"};
  dms::Dataset ds;
  for (std::size_t i = 0; i < n; ++i) {
    dms::Sample s;
    s.id = std::to_string(i);
    const auto len = 5 + rng.below(60);
    for (std::uint64_t w = 0; w < len; ++w) {
      if (w) s.text += ' ';
      s.text += words[rng.below(10)];
    }
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

std::vector<dms::StatSpec> specs() {
  return {{"text_length_filter", "", dms::Json::object()},
          {"alphanumeric_filter", "", dms::Json::object()},
          {"special_characters_filter", "", dms::Json::object()},
          {"character_repetition_filter", "", dms::Json{{"rep_len", 10}}},
          {"word_repetition_filter", "", dms::Json{{"rep_len", 3}}}};
}

void BM_ComputeStatsSerial(benchmark::State& state) {
  const auto ds = make_dataset(static_cast<std::size_t>(state.range(0)));
  const auto reg = dms::OpRegistry::with_builtins();
  for (auto _ : state) benchmark::DoNotOptimize(dms::compute_stats_serial(ds, specs(), reg));
}

void BM_ComputeStatsOpenMP(benchmark::State& state) {
  const auto ds = make_dataset(static_cast<std::size_t>(state.range(0)));
  const auto reg = dms::OpRegistry::with_builtins();
  for (auto _ : state) benchmark::DoNotOptimize(dms::compute_stats(ds, specs(), reg));
}

std::vector<dms::Series> make_series(std::size_t m, std::size_t n) {
  dms::Rng rng(11);
  std::vector<dms::Series> out;
  for (std::size_t i = 0; i < m; ++i) {
    dms::Series s{"s" + std::to_string(i), {}};
    for (std::size_t j = 0; j < n; ++j) s.values.push_back(rng.normal());
    out.push_back(std::move(s));
  }
  return out;
}

void BM_PearsonSerial(benchmark::State& state) {
  const auto series = make_series(static_cast<std::size_t>(state.range(0)), 10000);
  for (auto _ : state) benchmark::DoNotOptimize(dms::pearson_matrix_serial(series));
}

void BM_PearsonOpenMP(benchmark::State& state) {
  const auto series = make_series(static_cast<std::size_t>(state.range(0)), 10000);
  for (auto _ : state) benchmark::DoNotOptimize(dms::pearson_matrix(series));
}

}  // namespace

BENCHMARK(BM_ComputeStatsSerial)->Arg(2000)->Arg(20000);
BENCHMARK(BM_ComputeStatsOpenMP)->Arg(2000)->Arg(20000);
BENCHMARK(BM_PearsonSerial)->Arg(8)->Arg(32);
BENCHMARK(BM_PearsonOpenMP)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
