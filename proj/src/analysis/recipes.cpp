#include "dms/analysis/recipes.hpp"

#include <algorithm>
#include <bit>

#include "dms/core/error.hpp"

namespace dms {

RecipeStrategy recipe_strategy_from_string(std::string_view s) {
  if (s == "top-k" || s == "top_k") return RecipeStrategy::top_k;
  if (s == "cluster-representative" || s == "cluster_representative" || s == "cluster") {
    return RecipeStrategy::cluster_representative;
  }
  throw InvalidArgument("unknown recipe strategy '" + std::string(s) + "'");
}

namespace {

std::vector<Recipe> subsets(const std::vector<const OpRankRow*>& ops, std::size_t max_size, RecipeOrigin origin) {
  const std::size_t n = ops.size();
  std::vector<std::vector<std::size_t>> sets;
  for (unsigned m = 1; m < (1u << n); ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) > max_size) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (m >> i & 1u) s.push_back(i);
    }
    sets.push_back(std::move(s));
  }
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Recipe> out;
  for (const auto& s : sets) {
    Recipe r;
    r.origin = origin;
    for (auto i : s) {
      OperatorConfig op;
      op.op_name = ops[i]->op_name;
      op.split = ops[i]->best_split;
      r.ops.push_back(std::move(op));
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<Recipe> propose_recipes(const std::vector<OpRankRow>& ranking,
                                    const std::vector<std::vector<std::string>>& clusters, RecipeStrategy strategy,
                                    std::size_t max_order) {
  if (ranking.empty()) throw InvalidArgument("cannot propose recipes from an empty ranking");
  if (max_order == 0) throw InvalidArgument("max_order must be at least 1");
  if (max_order > ranking.size()) {
    throw InvalidArgument("max_order " + std::to_string(max_order) + " exceeds the " +
                          std::to_string(ranking.size()) + " ranked operators");
  }
  if (max_order > kMaxRecipeOrder) throw InvalidArgument("max_order above " + std::to_string(kMaxRecipeOrder));

  std::vector<const OpRankRow*> chosen;
  if (strategy == RecipeStrategy::top_k) {
    for (std::size_t i = 0; i < max_order; ++i) chosen.push_back(&ranking[i]);
    return subsets(chosen, max_order, RecipeOrigin::top_k);
  }
  if (clusters.empty()) throw InvalidArgument("cluster strategy needs clusters");
  for (const auto& cluster : clusters) {
    const OpRankRow* best = nullptr;
    std::size_t best_pos = ranking.size();
    for (const auto& name : cluster) {
      for (std::size_t i = 0; i < ranking.size(); ++i) {
        if (ranking[i].op_name == name && i < best_pos) {
          best_pos = i;
          best = &ranking[i];
        }
      }
    }
    if (best) chosen.push_back(best);
  }
  std::sort(chosen.begin(), chosen.end(), [&](const OpRankRow* a, const OpRankRow* b) { return a < b; });
  if (chosen.size() > kMaxRecipeOrder) chosen.resize(kMaxRecipeOrder);
  return subsets(chosen, max_order, RecipeOrigin::cluster_representative);
}

}  // namespace dms
