#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dms/core/ledger.hpp"

namespace dms {

struct AtomicJob;

struct HookContext {
  const AtomicJob& job;
  const RunLedger& ledger;
  std::filesystem::path workdir;
  // Set for post-job hooks.
  const LedgerEntry* entry = nullptr;
};

// Behaviors attached around jobs. Either callback may be empty.
struct Hook {
  std::function<void(const HookContext&)> pre_job;
  std::function<void(const HookContext&)> post_job;
};

class HookRegistry {
 public:
  // "job_log": appends one line per finished job to <workdir>/hooks.log.
  // "noop": does nothing.
  static HookRegistry with_builtins();

  void add(const std::string& name, Hook hook);
  bool contains(std::string_view name) const;
  const Hook& get(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Hook, std::less<>> hooks_;
};

}  // namespace dms
