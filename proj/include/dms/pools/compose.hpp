#pragma once

#include <map>
#include <string>
#include <vector>

#include "dms/core/types.hpp"
#include "dms/ops/registry.hpp"
#include "dms/pools/tertiles.hpp"

namespace dms {

// Fills each op's keep_range from its frozen probe boundaries and chosen
// split. Ops that already carry a range are left alone. Throws
// InvalidArgument when an op has neither a range nor boundaries and a split.
Recipe freeze_recipe(const Recipe& recipe, const std::map<std::string, SplitBoundaries>& boundaries);

// Statistic an operator config filters on: params.stat_name or the
// registry's declared statistic.
std::string config_stat_name(const OperatorConfig& op, const OpRegistry& registry);

// Applies the recipe's filters in order with their frozen ranges. The
// provenance lists the ops in application order. Throws InvalidArgument when
// an op has no keep_range.
DataPool compose_recipe(const Dataset& dataset, const Recipe& recipe, const OpRegistry& registry);

std::string recipe_pool_id(const Recipe& recipe);

}  // namespace dms
