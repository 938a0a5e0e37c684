#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "dms/core/ledger.hpp"
#include "dms/orchestrator/workflow.hpp"

namespace dms {

// Datasets loaded by jobs, shared read-only across executor threads.
class DatasetCache {
 public:
  std::shared_ptr<const Dataset> get(const std::filesystem::path& path);

 private:
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const Dataset>> cache_;
};

// Directory holding a finished job's artifacts: jobs/<sanitized id>-<hash>.
std::filesystem::path job_dir(const std::filesystem::path& workdir, const std::string& job_id);

// Every job writes output.json, the record its dependents read and the
// ledger digests, and may write report files under report/.
inline constexpr const char* kJobOutput = "output.json";
inline constexpr const char* kJobReport = "report";

struct ExecContext {
  const AtomicJob& job;
  const WorkflowPlan& plan;
  const Registries& registries;
  std::filesystem::path workdir;
  // Staging directory, renamed to job_dir once the job finishes.
  std::filesystem::path out_dir;
  DatasetCache& datasets;
};

struct ExecOutcome {
  JobStatus status = JobStatus::completed;
  std::string message;
};

// Runs one atomic job. Throws on failure; the runner records the message.
ExecOutcome execute_job(const ExecContext& ctx);

// Files outside the workdir whose bytes the job depends on (datasets,
// lexicons, scorer scripts).
std::vector<std::filesystem::path> job_input_files(const AtomicJob& job);

}  // namespace dms
