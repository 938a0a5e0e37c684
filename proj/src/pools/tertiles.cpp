#include "dms/pools/tertiles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dms/core/digest.hpp"
#include "dms/core/error.hpp"
#include "dms/core/rng.hpp"

namespace dms {

KeepRange SplitBoundaries::keep_range(int b) const {
  const int k = splits();
  if (b < 0 || b >= k) throw InvalidArgument("split index out of range");
  const double hi = b == k - 1 ? kInf : cuts[static_cast<std::size_t>(b)];
  double lo = -kInf;
  if (b > 0) lo = std::min(std::nextafter(cuts[static_cast<std::size_t>(b - 1)], kInf), hi);
  return KeepRange::make(lo, hi);
}

void to_json(Json& j, const SplitBoundaries& b) {
  Json cuts = Json::array();
  for (double c : b.cuts) cuts.push_back(number_to_json(c));
  j = Json{{"op_name", b.op_name}, {"stat_name", b.stat_name}, {"cuts", cuts}, {"dataset_digest", b.dataset_digest}};
}

void from_json(const Json& j, SplitBoundaries& b) {
  b.op_name = j.at("op_name").get<std::string>();
  b.stat_name = j.at("stat_name").get<std::string>();
  b.cuts.clear();
  for (const auto& c : j.at("cuts")) b.cuts.push_back(number_from_json(c));
  b.dataset_digest = j.value("dataset_digest", std::string{});
}

std::string split_pool_id(const std::string& op_name, int b, int k) {
  if (k == 3) return op_name + "/" + std::string(to_string(split_label(b, k)));
  return op_name + "/b" + std::to_string(b);
}

SplitLabel split_label(int b, int k) {
  if (b == 0) return SplitLabel::low;
  if (b == k - 1) return SplitLabel::high;
  return SplitLabel::mid;
}

SplitResult split_buckets(const Dataset& dataset, const std::string& op_name, const std::string& stat,
                          std::size_t target_pool_size, std::uint64_t seed, int k) {
  if (k < kMinSplits || k > kMaxSplits) throw InvalidArgument("number of splits must be in [2, 5]");
  if (target_pool_size == 0) throw InvalidArgument("target pool size must be at least 1");
  const std::size_t n = dataset.size();
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = dataset.samples[i];
    auto it = s.stats.find(stat);
    if (it == s.stats.end() || !std::isfinite(it->second)) {
      throw InvalidArgument("sample '" + s.id + "' has no finite statistic '" + stat + "'");
    }
    values[i] = it->second;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return dataset.samples[a].id < dataset.samples[b].id;
  });

  SplitResult result;
  result.boundaries.op_name = op_name;
  result.boundaries.stat_name = stat;
  const auto uk = static_cast<std::size_t>(k);
  std::size_t begin = 0;
  for (std::size_t b = 0; b < uk; ++b) {
    const std::size_t size = n / uk + (b < n % uk ? 1 : 0);
    std::vector<std::size_t> group(order.begin() + static_cast<std::ptrdiff_t>(begin),
                                   order.begin() + static_cast<std::ptrdiff_t>(begin + size));
    begin += size;
    result.group_sizes.push_back(size);
    if (b + 1 < uk) {
      double cut = -kInf;
      if (!group.empty()) {
        cut = values[group.back()];
      } else if (!result.boundaries.cuts.empty()) {
        cut = result.boundaries.cuts.back();
      }
      result.boundaries.cuts.push_back(cut);
    }
    const int bi = static_cast<int>(b);
    if (group.size() > target_pool_size) {
      Rng rng(derive_seed(seed, {"split", op_name, std::to_string(k), std::to_string(b)}));
      std::vector<std::size_t> kept;
      for (auto pos : sample_indices(group.size(), target_pool_size, rng)) kept.push_back(group[pos]);
      group = std::move(kept);
    }
    std::sort(group.begin(), group.end());
    DataPool pool;
    pool.pool_id = split_pool_id(op_name, bi, k);
    pool.split_label = split_label(bi, k);
    pool.bucket = bi;
    pool.declared_size = target_pool_size;
    for (auto i : group) pool.sample_ids.push_back(dataset.samples[i].id);
    result.pools.push_back(std::move(pool));
  }
  for (std::size_t b = 0; b < uk; ++b) {
    result.pools[b].provenance.push_back(
        ProvenanceStep{op_name, result.boundaries.keep_range(static_cast<int>(b)), Json::object()});
  }
  return result;
}

}  // namespace dms
