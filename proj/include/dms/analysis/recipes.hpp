#pragma once

#include <string>
#include <vector>

#include "dms/analysis/ranking.hpp"
#include "dms/core/types.hpp"

namespace dms {

enum class RecipeStrategy { top_k, cluster_representative };

RecipeStrategy recipe_strategy_from_string(std::string_view s);

inline constexpr std::size_t kMaxRecipeOrder = 10;

// Candidate recipes over the ranked ops, each op at its best split (split
// set, keep_range left for freeze_recipe).
//
// top_k: every non-empty subset of the top max_order ops.
// cluster_representative: the best-ranked op of each cluster, then every
// non-empty subset of those representatives with at most max_order ops.
//
// Candidates are ordered by size, then by rank positions; ops inside a recipe
// follow the ranking. Throws InvalidArgument when the ranking is empty,
// max_order is 0, exceeds the ranking length or kMaxRecipeOrder, or clusters
// are missing for the cluster strategy.
std::vector<Recipe> propose_recipes(const std::vector<OpRankRow>& ranking,
                                    const std::vector<std::vector<std::string>>& clusters,
                                    RecipeStrategy strategy, std::size_t max_order);

}  // namespace dms
