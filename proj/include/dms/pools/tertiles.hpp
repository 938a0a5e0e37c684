#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

// Cut points of a k-way split, frozen on the dataset it was computed on.
// cuts[b] is the largest statistic value in group b (k - 1 cuts).
struct SplitBoundaries {
  std::string op_name;
  std::string stat_name;
  std::vector<double> cuts;
  std::string dataset_digest;

  int splits() const noexcept { return static_cast<int>(cuts.size()) + 1; }
  // Closed range selecting group b on the frozen dataset. A value equal to a
  // cut belongs to the lower group.
  KeepRange keep_range(int b) const;

  bool operator==(const SplitBoundaries&) const = default;
};

void to_json(Json& j, const SplitBoundaries& b);
void from_json(const Json& j, SplitBoundaries& b);

struct SplitResult {
  std::vector<DataPool> pools;  // lowest group first
  SplitBoundaries boundaries;
  std::vector<std::size_t> group_sizes;  // before downsampling
};

inline constexpr int kMinSplits = 2;
inline constexpr int kMaxSplits = 5;

// Pool id of group b of a k-way split of op_name ("op/low", "op/b3").
std::string split_pool_id(const std::string& op_name, int b, int k);
SplitLabel split_label(int b, int k);

// Sorts by (stat, id), cuts into k contiguous groups whose sizes differ by at
// most one (extra samples go to the lower groups), then downsamples each
// group larger than target_pool_size with a seeded draw. Pool ids are listed
// in dataset order; a group smaller than the target yields a short pool.
//
// Throws InvalidArgument when a sample lacks the statistic, k is outside
// [2, 5], or target_pool_size is 0.
SplitResult split_buckets(const Dataset& dataset, const std::string& op_name, const std::string& stat,
                          std::size_t target_pool_size, std::uint64_t seed, int k = 3);

inline SplitResult split_tertiles(const Dataset& dataset, const std::string& op_name, const std::string& stat,
                                  std::size_t target_pool_size, std::uint64_t seed) {
  return split_buckets(dataset, op_name, stat, target_pool_size, seed, 3);
}

}  // namespace dms
