#include "dms/core/ledger.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "dms/core/error.hpp"

namespace dms {

std::string_view to_string(JobStatus s) {
  switch (s) {
    case JobStatus::completed: return "completed";
    case JobStatus::failed: return "failed";
    case JobStatus::skipped: return "skipped";
    case JobStatus::aborted: return "aborted";
  }
  return "?";
}

JobStatus job_status_from_string(std::string_view s) {
  if (s == "completed") return JobStatus::completed;
  if (s == "failed") return JobStatus::failed;
  if (s == "skipped") return JobStatus::skipped;
  if (s == "aborted") return JobStatus::aborted;
  throw ParseError("unknown job status '" + std::string(s) + "'");
}

void to_json(Json& j, const LedgerEntry& e) {
  j = Json{{"job_id", e.job_id},
           {"job_kind", e.job_kind},
           {"input_digest", e.input_digest},
           {"output_digest", e.output_digest},
           {"status", std::string(to_string(e.status))},
           {"seed", e.seed},
           {"started_at", e.started_at},
           {"finished_at", e.finished_at}};
  if (!e.message.empty()) j["message"] = e.message;
}

void from_json(const Json& j, LedgerEntry& e) {
  e.job_id = j.at("job_id").get<std::string>();
  e.job_kind = j.at("job_kind").get<std::string>();
  e.input_digest = j.at("input_digest").get<std::string>();
  e.output_digest = j.value("output_digest", std::string{});
  e.status = job_status_from_string(j.at("status").get<std::string>());
  e.seed = j.value("seed", std::uint64_t{0});
  e.started_at = j.value("started_at", std::string{});
  e.finished_at = j.value("finished_at", std::string{});
  e.message = j.value("message", std::string{});
}

namespace {

bool is_done(JobStatus s) { return s == JobStatus::completed || s == JobStatus::aborted; }

}  // namespace

RunLedger::RunLedger(const std::filesystem::path& path) : path_(path) {
  std::string existing;
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read ledger " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      LedgerEntry e;
      try {
        e = Json::parse(line).get<LedgerEntry>();
      } catch (const std::exception&) {
        if (in.peek() == std::char_traits<char>::eof()) break;  // torn final line
        throw ParseError("corrupt ledger entry in " + path.string(), line_no);
      }
      if (is_done(e.status)) done_[e.job_id] = entries_.size();
      entries_.push_back(std::move(e));
      existing += line;
      existing += '\n';
    }
    // Rewrite without any torn tail so later appends start on a clean line.
    std::ofstream rewrite(path, std::ios::trunc);
    rewrite << existing;
  }
  out_.open(path, std::ios::app);
  if (!out_) throw IoError("cannot open ledger " + path.string() + " for append");
}

void RunLedger::append(const LedgerEntry& entry) {
  std::lock_guard lock(mu_);
  if (is_done(entry.status)) {
    for (const auto& e : entries_) {
      if (is_done(e.status) && e.job_id == entry.job_id && e.input_digest == entry.input_digest) {
        throw InvalidArgument("ledger already holds a completed entry for '" + entry.job_id + "'");
      }
    }
    done_[entry.job_id] = entries_.size();
  }
  entries_.push_back(entry);
  if (out_.is_open()) {
    out_ << Json(entry).dump() << '\n';
    out_.flush();
  }
}

std::vector<LedgerEntry> RunLedger::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

std::optional<LedgerEntry> RunLedger::completed(const std::string& job_id) const {
  std::lock_guard lock(mu_);
  auto it = done_.find(job_id);
  if (it == done_.end()) return std::nullopt;
  return entries_[it->second];
}

std::size_t RunLedger::count(JobStatus status) const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.status == status;
  return n;
}

std::string utc_now() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t t = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

}  // namespace dms
