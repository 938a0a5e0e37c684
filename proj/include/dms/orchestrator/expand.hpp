#pragma once

#include <string>
#include <vector>

#include "dms/orchestrator/workflow.hpp"

namespace dms {

// Macro job kinds understood by expand_plan.
std::vector<std::string> macro_kinds();

// Expands plan.phases into plan.jobs. A job may only reference (through
// needs or params) jobs declared before it. Throws ConfigError.
void expand_plan(WorkflowPlan& plan, const Registries& registries);

// Number of recipes propose_recipes yields for the given sizes.
std::size_t recipe_count(std::size_t candidates, std::size_t max_order);

}  // namespace dms
