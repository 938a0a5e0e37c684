#include "dms/pools/compose.hpp"

#include "dms/core/error.hpp"

namespace dms {

Recipe freeze_recipe(const Recipe& recipe, const std::map<std::string, SplitBoundaries>& boundaries) {
  Recipe out = recipe;
  for (auto& op : out.ops) {
    if (op.keep_range) continue;
    auto it = boundaries.find(op.op_name);
    if (it == boundaries.end() || !op.split) {
      throw InvalidArgument("operator '" + op.op_name + "' has no frozen boundaries");
    }
    op.keep_range = it->second.keep_range(*op.split);
  }
  return out;
}

std::string config_stat_name(const OperatorConfig& op, const OpRegistry& registry) {
  return registry.stat_name(op.op_name, op.params);
}

std::string recipe_pool_id(const Recipe& recipe) {
  std::string id = "recipe/";
  for (std::size_t i = 0; i < recipe.ops.size(); ++i) {
    if (i) id += '+';
    id += recipe.ops[i].op_name;
    if (recipe.ops[i].split) id += ":" + std::to_string(*recipe.ops[i].split);
  }
  return id;
}

DataPool compose_recipe(const Dataset& dataset, const Recipe& recipe, const OpRegistry& registry) {
  check_invariants(recipe);
  std::vector<std::size_t> kept(dataset.size());
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;
  DataPool pool;
  pool.pool_id = recipe_pool_id(recipe);
  pool.split_label = SplitLabel::composed;
  for (const auto& op : recipe.ops) {
    if (!op.keep_range) throw InvalidArgument("operator '" + op.op_name + "' has no frozen keep range");
    const auto stat = config_stat_name(op, registry);
    std::vector<std::size_t> next;
    for (auto i : kept) {
      const auto& s = dataset.samples[i];
      auto it = s.stats.find(stat);
      if (it == s.stats.end()) {
        throw InvalidArgument("sample '" + s.id + "' has no statistic '" + stat + "'; compute stats first");
      }
      if (op.keep_range->contains(it->second)) next.push_back(i);
    }
    kept = std::move(next);
    pool.provenance.push_back(ProvenanceStep{op.op_name, *op.keep_range, op.params});
  }
  pool.pyramid_level = static_cast<int>(pool.provenance.size());
  for (auto i : kept) pool.sample_ids.push_back(dataset.samples[i].id);
  pool.declared_size = pool.sample_ids.size();
  return pool;
}

}  // namespace dms
