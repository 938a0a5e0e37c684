#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

enum class JobStatus { completed, failed, skipped, aborted };

std::string_view to_string(JobStatus s);
JobStatus job_status_from_string(std::string_view s);

struct LedgerEntry {
  std::string job_id;
  std::string job_kind;
  std::string input_digest;
  std::string output_digest;
  JobStatus status = JobStatus::completed;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  std::string message;

  bool operator==(const LedgerEntry&) const = default;
};

void to_json(Json& j, const LedgerEntry& e);
void from_json(const Json& j, LedgerEntry& e);

// Append-only record of every job. Entries are kept in memory and, when
// opened on a path, mirrored to a JSONL file with one flushed line per append.
class RunLedger {
 public:
  RunLedger() = default;

  // Loads existing entries (a torn trailing line from a crash is ignored)
  // and appends subsequent entries to the same file.
  explicit RunLedger(const std::filesystem::path& path);
  RunLedger(const RunLedger&) = delete;
  RunLedger& operator=(const RunLedger&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

  // Throws InvalidArgument if a completed entry with the same job id and
  // input digest already exists.
  void append(const LedgerEntry& entry);

  std::vector<LedgerEntry> entries() const;
  // Latest completed (or aborted) entry for the job, if any.
  std::optional<LedgerEntry> completed(const std::string& job_id) const;
  std::size_t count(JobStatus status) const;

 private:
  mutable std::mutex mu_;
  std::vector<LedgerEntry> entries_;
  std::map<std::string, std::size_t> done_;
  std::filesystem::path path_;
  std::ofstream out_;
};

// UTC timestamp, ISO-8601 with milliseconds.
std::string utc_now();

}  // namespace dms
