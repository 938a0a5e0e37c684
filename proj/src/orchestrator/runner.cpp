#include "dms/orchestrator/runner.hpp"

#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

#include "dms/core/digest.hpp"
#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/core/ledger.hpp"
#include "dms/orchestrator/executors.hpp"
#include "dms/reports/bundle.hpp"
#include "dms/reports/csv.hpp"

namespace dms {

std::string job_input_digest(const AtomicJob& job, std::uint64_t seed,
                             const std::map<std::string, std::string>& need_digests) {
  Sha256 h;
  h.field(job.kind).field(job.params.dump()).field(std::to_string(seed));
  for (const auto& n : job.needs) h.field(n).field(need_digests.at(n));
  for (const auto& f : job_input_files(job)) h.field(f.string()).field(file_digest(f));
  return h.hex();
}

namespace {

enum class State { pending, running, done, failed, skipped };

struct Finished {
  std::size_t index;
  LedgerEntry entry;
};

class Runner {
 public:
  Runner(const WorkflowPlan& plan, const Registries& reg, const RunOptions& opts)
      : plan_(plan), reg_(reg), opts_(opts), workdir_(plan.workdir) {}

  RunSummary run() {
    if (workdir_.empty()) throw ConfigError("no workdir: set it in the config, with --workdir or SANDBOX_WORKDIR");
    workdir_ = fs::absolute(workdir_).lexically_normal();
    std::error_code ec;
    fs::create_directories(workdir_, ec);
    if (ec) throw IoError("cannot create workdir " + workdir_.string() + ": " + ec.message());
    if (!opts_.resume) {
      for (const auto* name : {kLedgerFile, "jobs", kReportDir, "hooks.log"}) fs::remove_all(workdir_ / name);
    }
    fs::create_directories(workdir_ / "jobs");
    ledger_.emplace(workdir_ / kLedgerFile);
    workers_ = std::max<std::size_t>(1, opts_.max_parallel.value_or(plan_.max_parallel));

    state_.assign(plan_.jobs.size(), State::pending);
    for (std::size_t i = 0; i < plan_.jobs.size(); ++i) index_[plan_.jobs[i].id] = i;

    for (auto phase : kPhases) {
      run_phase(phase);
      if (opts_.halt_after_phase && *opts_.halt_after_phase == phase) {
        summary_.halted = true;
        break;
      }
    }
    if (!summary_.halted) assemble_bundle();
    return summary_;
  }

 private:
  const WorkflowPlan& plan_;
  const Registries& reg_;
  const RunOptions& opts_;
  fs::path workdir_;
  std::optional<RunLedger> ledger_;
  std::size_t workers_ = 1;
  std::vector<State> state_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, std::string> output_digest_;
  std::map<std::string, JobStatus> final_status_;
  DatasetCache datasets_;
  RunSummary summary_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Finished> finished_;

  void log(const std::string& line) const {
    if (opts_.log) opts_.log(line);
  }

  void run_phase(Phase phase) {
    std::vector<std::size_t> jobs;
    for (std::size_t i = 0; i < plan_.jobs.size(); ++i) {
      if (plan_.jobs[i].phase == phase) jobs.push_back(i);
    }
    std::vector<std::thread> threads;
    std::size_t running = 0;
    std::size_t remaining = jobs.size();
    while (remaining > 0) {
      bool progressed = false;
      for (auto i : jobs) {
        if (state_[i] != State::pending) continue;
        const auto& job = plan_.jobs[i];
        bool ready = true;
        std::string blocked_by;
        for (const auto& n : job.needs) {
          const auto s = state_[index_.at(n)];
          if (s == State::failed || s == State::skipped) blocked_by = n;
          if (s != State::done) ready = false;
        }
        if (!blocked_by.empty()) {
          skip(i, blocked_by);
          --remaining;
          progressed = true;
          continue;
        }
        if (!ready) continue;
        if (try_resume(i)) {
          --remaining;
          progressed = true;
          continue;
        }
        if (running >= workers_) continue;
        state_[i] = State::running;
        ++running;
        progressed = true;
        threads.emplace_back([this, i] { execute(i); });
      }
      if (progressed) continue;
      if (running == 0) throw Error("scheduler stalled: unresolved dependencies in phase " + std::string(to_string(phase)));
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] { return !finished_.empty(); });
      while (!finished_.empty()) {
        auto f = std::move(finished_.front());
        finished_.pop_front();
        lock.unlock();
        record(f.index, f.entry);
        lock.lock();
        --running;
        --remaining;
      }
    }
    for (auto& t : threads) t.join();
  }

  std::map<std::string, std::string> need_digests(const AtomicJob& job) const {
    std::map<std::string, std::string> out;
    for (const auto& n : job.needs) out[n] = output_digest_.at(n);
    return out;
  }

  bool try_resume(std::size_t i) {
    if (!opts_.resume) return false;
    const auto& job = plan_.jobs[i];
    auto prev = ledger_->completed(job.id);
    if (!prev || prev->input_digest != job_input_digest(job, plan_.seed, need_digests(job))) return false;
    const auto out = job_dir(workdir_, job.id) / kJobOutput;
    if (!fs::exists(out) || file_digest(out) != prev->output_digest) {
      // Output vanished or was edited behind the ledger's back: rebuild it.
      return false;
    }
    state_[i] = State::done;
    output_digest_[job.id] = prev->output_digest;
    final_status_[job.id] = prev->status;
    ++summary_.resumed;
    log("resumed   " + job.id);
    return true;
  }

  void skip(std::size_t i, const std::string& blocked_by) {
    const auto& job = plan_.jobs[i];
    LedgerEntry e;
    e.job_id = job.id;
    e.job_kind = job.kind;
    e.status = JobStatus::skipped;
    e.seed = plan_.seed;
    e.started_at = e.finished_at = utc_now();
    e.message = "dependency '" + blocked_by + "' did not complete";
    ledger_->append(e);
    state_[i] = State::skipped;
    final_status_[job.id] = JobStatus::skipped;
    ++summary_.skipped;
    log("skipped   " + job.id + ": " + e.message);
  }

  void run_hooks(const AtomicJob& job, const LedgerEntry* entry) const {
    for (const auto& name : job.hooks) {
      const auto& hook = reg_.hooks.get(name);
      const auto& fn = entry ? hook.post_job : hook.pre_job;
      if (fn) fn(HookContext{job, *ledger_, workdir_, entry});
    }
  }

  void execute(std::size_t i) {
    const auto& job = plan_.jobs[i];
    LedgerEntry e;
    e.job_id = job.id;
    e.job_kind = job.kind;
    e.seed = plan_.seed;
    e.started_at = utc_now();
    const auto final_dir = job_dir(workdir_, job.id);
    auto staging = final_dir;
    staging.replace_filename("." + final_dir.filename().string() + ".tmp");
    try {
      std::map<std::string, std::string> needs;
      {
        std::lock_guard lock(mu_);
        needs = need_digests(job);
      }
      e.input_digest = job_input_digest(job, plan_.seed, needs);
      fs::remove_all(staging);
      fs::create_directories(staging);
      run_hooks(job, nullptr);
      const auto outcome = execute_job(ExecContext{job, plan_, reg_, workdir_, staging, datasets_});
      e.output_digest = file_digest(staging / kJobOutput);
      fs::remove_all(final_dir);
      fs::rename(staging, final_dir);
      e.status = outcome.status;
      e.message = outcome.message;
    } catch (const std::exception& ex) {
      std::error_code ec;
      fs::remove_all(staging, ec);
      e.status = JobStatus::failed;
      e.output_digest.clear();
      e.message = ex.what();
    }
    e.finished_at = utc_now();
    std::lock_guard lock(mu_);
    finished_.push_back({i, std::move(e)});
    cv_.notify_one();
  }

  void record(std::size_t i, LedgerEntry e) {
    const auto& job = plan_.jobs[i];
    try {
      const auto prev = ledger_->completed(job.id);
      const bool rebuilt = prev && e.status != JobStatus::failed && prev->input_digest == e.input_digest;
      if (!rebuilt) ledger_->append(e);
      if (e.status != JobStatus::failed) run_hooks(job, &e);
    } catch (const std::exception& ex) {
      if (e.status != JobStatus::failed) {
        e.status = JobStatus::failed;
        e.message = std::string("post-job: ") + ex.what();
        ledger_->append(e);
      }
    }
    {
      std::lock_guard lock(mu_);
      output_digest_[job.id] = e.output_digest;
    }
    final_status_[job.id] = e.status;
    if (e.status == JobStatus::failed) {
      state_[i] = State::failed;
      ++summary_.failed;
      summary_.failed_jobs.push_back(job.id);
      log("failed    " + job.id + ": " + e.message);
      return;
    }
    state_[i] = State::done;
    ++summary_.executed;
    if (e.status == JobStatus::aborted) ++summary_.aborted;
    log(std::string(e.status == JobStatus::aborted ? "aborted   " : "completed ") + job.id);
  }

  void assemble_bundle() {
    const auto bundle = workdir_ / kReportDir;
    fs::remove_all(bundle);
    fs::create_directories(bundle);
    std::string jobs = csv::row({"job", "kind", "phase", "status", "output_digest"});
    for (const auto& job : plan_.jobs) {
      const auto status = final_status_.count(job.id) ? std::string(to_string(final_status_.at(job.id))) : "pending";
      const auto digest = output_digest_.count(job.id) ? output_digest_.at(job.id) : "";
      jobs += csv::row({job.id, job.kind, std::string(to_string(job.phase)), status, digest});
      const auto src = job_dir(workdir_, job.id) / kJobReport;
      if (status == "failed" || status == "skipped" || !fs::is_directory(src)) continue;
      fs::copy(src, bundle / safe_file_name(job.id), fs::copy_options::recursive);
    }
    write_file_atomic(bundle / "jobs.csv", jobs);
    if (!plan_.warnings.empty()) {
      std::string w;
      for (const auto& line : plan_.warnings) w += line + "\n";
      write_file_atomic(bundle / "warnings.txt", w);
    }
    write_bundle_index(bundle);
    summary_.bundle_dir = bundle;
  }
};

}  // namespace

RunSummary run_plan(const WorkflowPlan& plan, const Registries& registries, const RunOptions& options) {
  return Runner(plan, registries, options).run();
}

}  // namespace dms
