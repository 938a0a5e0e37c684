#include "dms/pools/random_control.hpp"

#include "dms/core/digest.hpp"
#include "dms/core/error.hpp"
#include "dms/core/rng.hpp"

namespace dms {

DataPool sample_random_control(const Dataset& dataset, std::size_t size, std::uint64_t seed) {
  if (size > dataset.size()) {
    throw InvalidArgument("random control of " + std::to_string(size) + " samples from a dataset of " +
                          std::to_string(dataset.size()));
  }
  Rng rng(derive_seed(seed, {"random_control"}));
  auto idx = sample_indices(dataset.size(), size, rng);
  shuffle(std::span<std::size_t>(idx), rng);
  DataPool pool;
  pool.pool_id = kRandomPoolId;
  pool.split_label = SplitLabel::random;
  pool.declared_size = size;
  pool.sample_ids.reserve(size);
  for (auto i : idx) pool.sample_ids.push_back(dataset.samples[i].id);
  return pool;
}

}  // namespace dms
