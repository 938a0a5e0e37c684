#include "dms/orchestrator/hooks.hpp"

#include <fstream>
#include <mutex>

#include "dms/core/error.hpp"
#include "dms/orchestrator/workflow.hpp"

namespace dms {

HookRegistry HookRegistry::with_builtins() {
  HookRegistry r;
  r.add("noop", Hook{});
  r.add("job_log", Hook{{}, [](const HookContext& ctx) {
                          static std::mutex mu;
                          std::lock_guard lock(mu);
                          std::ofstream out(ctx.workdir / "hooks.log", std::ios::app);
                          out << ctx.job.id << '\t' << (ctx.entry ? to_string(ctx.entry->status) : "?") << '\n';
                        }});
  return r;
}

void HookRegistry::add(const std::string& name, Hook hook) { hooks_.insert_or_assign(name, std::move(hook)); }

bool HookRegistry::contains(std::string_view name) const { return hooks_.find(name) != hooks_.end(); }

const Hook& HookRegistry::get(std::string_view name) const {
  auto it = hooks_.find(name);
  if (it == hooks_.end()) throw ConfigError("unknown hook '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> HookRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : hooks_) out.push_back(k);
  return out;
}

}  // namespace dms
