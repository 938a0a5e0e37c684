#include "dms/pools/pyramid.hpp"

#include <algorithm>
#include <bit>

#include "dms/core/error.hpp"
#include "dms/pools/compose.hpp"

namespace dms {

namespace {

// Positions of the set bits, ascending.
std::vector<std::size_t> members(unsigned mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask >> i; ++i) {
    if (mask >> i & 1u) out.push_back(i);
  }
  return out;
}

}  // namespace

Json pyramid_to_json(const PyramidSpec& p) {
  Json pools = Json::array();
  for (std::size_t j = 0; j < p.pools.size(); ++j) {
    Json ops = Json::array();
    for (auto i : members(p.masks[j])) ops.push_back(p.top_ops[i].op_name);
    pools.push_back({{"pool_id", p.pools[j].pool_id},
                     {"level", p.pools[j].pyramid_level.value_or(0)},
                     {"ops", ops},
                     {"size", p.pools[j].actual_size()}});
  }
  return Json{{"top_ops", p.top_ops}, {"pools", pools}};
}

PyramidSpec build_pyramid(const Dataset& dataset, const std::vector<OperatorConfig>& top_ops,
                          const OpRegistry& registry, std::size_t max_ops) {
  const std::size_t n = top_ops.size();
  if (n == 0) throw InvalidArgument("pyramid needs at least one operator");
  if (n > max_ops) {
    throw InvalidArgument("pyramid over " + std::to_string(n) + " operators exceeds the maximum of " +
                          std::to_string(max_ops));
  }
  check_invariants(Recipe{top_ops, RecipeOrigin::manual});

  // keep[i][s]: sample s passes op i.
  std::vector<std::vector<char>> keep(n, std::vector<char>(dataset.size()));
  for (std::size_t i = 0; i < n; ++i) {
    if (!top_ops[i].keep_range) throw InvalidArgument("operator '" + top_ops[i].op_name + "' has no keep range");
    const auto stat = config_stat_name(top_ops[i], registry);
    for (std::size_t s = 0; s < dataset.size(); ++s) {
      const auto& sample = dataset.samples[s];
      auto it = sample.stats.find(stat);
      if (it == sample.stats.end()) {
        throw InvalidArgument("sample '" + sample.id + "' has no statistic '" + stat + "'");
      }
      keep[i][s] = top_ops[i].keep_range->contains(it->second) ? 1 : 0;
    }
  }

  std::vector<unsigned> masks;
  for (unsigned m = 1; m < (1u << n); ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa > pb;
    return members(a) < members(b);
  });

  PyramidSpec spec;
  spec.top_ops = top_ops;
  spec.masks = masks;
  for (unsigned m : masks) {
    Recipe r;
    for (auto i : members(m)) r.ops.push_back(top_ops[i]);
    DataPool pool;
    pool.pool_id = "pyramid/" + recipe_pool_id(r).substr(7);
    pool.split_label = SplitLabel::composed;
    for (const auto& op : r.ops) pool.provenance.push_back(ProvenanceStep{op.op_name, *op.keep_range, op.params});
    pool.pyramid_level = std::popcount(m);
    const auto ops = members(m);
    for (std::size_t s = 0; s < dataset.size(); ++s) {
      bool in = true;
      for (auto i : ops) in = in && keep[i][s];
      if (in) pool.sample_ids.push_back(dataset.samples[s].id);
    }
    pool.declared_size = pool.sample_ids.size();
    spec.pools.push_back(std::move(pool));
  }
  return spec;
}

}  // namespace dms
