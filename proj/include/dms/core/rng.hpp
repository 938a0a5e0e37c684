#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dms {

// mt19937_64 is bit-exact across standard libraries; the distributions in
// <random> are not, so draws go through the helpers below.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  // Uniform double in [0, 1).
  double uniform();
  // Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

template <class T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

// k distinct indices of [0, n), in ascending order. Requires k <= n.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng);

}  // namespace dms
