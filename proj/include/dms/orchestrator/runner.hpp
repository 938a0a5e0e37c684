#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dms/orchestrator/workflow.hpp"

namespace dms {

struct RunOptions {
  // Reuse completed ledger entries whose input digest still matches.
  // Without it, ledger.jsonl, jobs/ and report/ are cleared first.
  bool resume = false;
  // Stop after this phase finishes.
  std::optional<Phase> halt_after_phase;
  // Overrides the plan's max_parallel when set.
  std::optional<std::size_t> max_parallel;
  // Progress lines ("completed probe/stats"), from the coordinator thread.
  std::function<void(const std::string&)> log;
};

struct RunSummary {
  std::size_t executed = 0;
  std::size_t resumed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;  // dependents of failed jobs
  std::size_t aborted = 0;  // early-stopped trials
  std::vector<std::string> failed_jobs;
  std::filesystem::path bundle_dir;
  bool halted = false;

  bool ok() const noexcept { return failed == 0 && skipped == 0; }
};

inline constexpr const char* kLedgerFile = "ledger.jsonl";
inline constexpr const char* kReportDir = "report";

// Executes the plan's phases in order under plan.workdir. Within a phase,
// jobs whose needs are done run on up to max_parallel workers. A failed job
// marks its dependents skipped; unrelated jobs continue. Reports of finished
// jobs are collected into <workdir>/report with an index.json of digests.
// Throws ConfigError when the workdir is unset, IoError when unwritable.
RunSummary run_plan(const WorkflowPlan& plan, const Registries& registries, const RunOptions& options = {});

// Content address of a job: kind, params, global seed, the output digests
// of its needs and the bytes of its external input files.
std::string job_input_digest(const AtomicJob& job, std::uint64_t seed,
                             const std::map<std::string, std::string>& need_digests);

}  // namespace dms
