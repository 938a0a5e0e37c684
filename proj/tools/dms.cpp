#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dms/analysis/ranking.hpp"
#include "dms/core/dataset_io.hpp"
#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/core/validate.hpp"
#include "dms/cost/cost_model.hpp"
#include "dms/orchestrator/runner.hpp"
#include "dms/orchestrator/workflow.hpp"
#include "dms/reports/bundle.hpp"
#include "dms/reports/csv.hpp"
#include "dms/reports/reports.hpp"

namespace {

enum Exit : int { kOk = 0, kFailed = 1, kUsage = 2, kConfig = 3, kIo = 4 };

std::optional<dms::fs::path> env_workdir() {
  if (const char* w = std::getenv("SANDBOX_WORKDIR"); w && *w) return dms::fs::path(w);
  return std::nullopt;
}

struct RunArgs {
  std::string config;
  std::string workdir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_parallel;
  bool resume = false;
  std::string halt_after;
  bool quiet = false;
};

int cmd_run(const RunArgs& a) {
  if (!dms::fs::exists(a.config)) {
    std::cerr << "dms run: config not found: " << a.config << "\n";
    return kUsage;
  }
  dms::Registries registries;
  auto plan = dms::load_workflow(a.config, registries);
  if (!a.workdir.empty()) {
    plan.workdir = a.workdir;
  } else if (plan.workdir.empty()) {
    if (auto w = env_workdir()) {
      plan.workdir = *w;
    } else {
      std::cerr << "dms run: no workdir (config, --workdir or SANDBOX_WORKDIR)\n";
      return kUsage;
    }
  }
  if (a.seed) plan.seed = *a.seed;
  for (const auto& w : plan.warnings) std::cerr << "warning: " << w << "\n";

  dms::RunOptions opts;
  opts.resume = a.resume;
  opts.max_parallel = a.max_parallel;
  if (!a.halt_after.empty()) opts.halt_after_phase = dms::phase_from_string(a.halt_after);
  if (!a.quiet) opts.log = [](const std::string& line) { std::cerr << line << "\n"; };
  const auto s = dms::run_plan(plan, registries, opts);
  std::cout << "executed " << s.executed << ", resumed " << s.resumed << ", aborted " << s.aborted << ", failed "
            << s.failed << ", skipped " << s.skipped << "\n";
  for (const auto& f : s.failed_jobs) std::cout << "failed: " << f << "\n";
  if (!s.bundle_dir.empty()) std::cout << "bundle: " << s.bundle_dir.string() << "\n";
  return s.ok() ? kOk : kFailed;
}

struct ReportArgs {
  std::string workdir;
  std::string rank_csv;
};

// Input rows: op,<change per split...>; output: the ranking CSV.
int rank_file(const std::string& path) {
  auto rows = dms::parse_ranking_csv(dms::read_file(path));
  if (rows.empty()) throw dms::ParseError("no rows to rank");
  const auto splits = static_cast<int>(rows.front().changes.size());
  std::cout << dms::ranking_csv(dms::rank_ops(std::move(rows)), splits);
  return kOk;
}

int cmd_report(const ReportArgs& a) {
  if (!a.rank_csv.empty()) return rank_file(a.rank_csv);
  dms::fs::path workdir = a.workdir;
  if (workdir.empty()) {
    auto w = env_workdir();
    if (!w) {
      std::cerr << "dms report: no workdir (--workdir or SANDBOX_WORKDIR)\n";
      return kUsage;
    }
    workdir = *w;
  }
  const auto bundle = workdir / dms::kReportDir;
  const auto problems = dms::verify_bundle(bundle);
  const auto index = dms::Json::parse(dms::read_file(bundle / dms::kBundleIndex));
  for (const auto& f : index.at("files")) {
    std::cout << f.at("sha256").get<std::string>().substr(0, 12) << "  " << f.at("path").get<std::string>() << "\n";
  }
  for (const auto& p : problems) std::cout << "problem: " << p << "\n";
  std::cout << index.at("files").size() << " files, " << (problems.empty() ? "index verified" : "index mismatch")
            << "\n";
  return problems.empty() ? kOk : kFailed;
}

struct CostArgs {
  dms::CostParams params;
  dms::HoeffdingParams hoeffding;
};

int cmd_cost(const CostArgs& a) {
  std::cout << dms::cost_report(a.params, a.hoeffding).dump(2) << "\n";
  return kOk;
}

struct ValidateArgs {
  std::string config;
  std::string dataset;
};

int cmd_validate(const ValidateArgs& a) {
  if (!a.dataset.empty()) {
    const auto report = dms::validate_dataset(dms::load_dataset(a.dataset));
    std::cout << dms::to_json(report).dump(2) << "\n";
    return report.valid() ? kOk : kFailed;
  }
  if (a.config.empty()) {
    std::cerr << "dms validate: give a config path or --dataset\n";
    return kUsage;
  }
  if (!dms::fs::exists(a.config)) {
    std::cerr << "dms validate: config not found: " << a.config << "\n";
    return kUsage;
  }
  const auto plan = dms::load_workflow(a.config);
  std::map<std::string, std::size_t> kinds;
  for (const auto& j : plan.jobs) ++kinds[j.kind];
  std::cout << "valid: " << plan.jobs.size() << " jobs";
  for (const auto& [k, n] : kinds) std::cout << ", " << n << " " << k;
  std::cout << "\n";
  for (const auto& w : plan.warnings) std::cout << "warning: " << w << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feedback-driven sandbox for data-recipe experiments"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Execute a workflow config");
  run_cmd->add_option("config", run.config, "Workflow YAML")->required();
  run_cmd->add_option("--workdir", run.workdir, "Output directory (else config workdir, else SANDBOX_WORKDIR)");
  run_cmd->add_option("--seed", run.seed, "Override the global seed");
  run_cmd->add_option("--max-parallel", run.max_parallel, "Concurrent jobs")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--resume", run.resume, "Skip jobs already completed with the same inputs");
  run_cmd->add_option("--halt-after", run.halt_after, "Stop after this phase")
      ->check(CLI::IsMember({"probe", "refine", "execute", "evaluate"}));
  run_cmd->add_flag("-q,--quiet", run.quiet, "No per-job progress lines");

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Verify and list a run's report bundle, or rank a table");
  report_cmd->add_option("--workdir", report.workdir, "Run directory (else SANDBOX_WORKDIR)");
  report_cmd->add_option("--rank", report.rank_csv, "CSV of op,<split changes...> to rank instead");

  CostArgs cost;
  auto* cost_cmd = app.add_subcommand("cost", "Break-even and Hoeffding bound");
  cost_cmd->add_option("--T-full", cost.params.t_full, "Full-scale experiment cost")->capture_default_str();
  cost_cmd->add_option("--r", cost.params.r, "Pool-to-full cost ratio in (0, 1]")->capture_default_str();
  cost_cmd->add_option("--M", cost.params.M, "Heuristic full-scale iterations")->capture_default_str();
  cost_cmd->add_option("--m", cost.params.m, "Planned small-pool experiments")->capture_default_str();
  cost_cmd->add_option("--epsilon", cost.hoeffding.epsilon, "Deviation")->capture_default_str();
  cost_cmd->add_option("--a", cost.hoeffding.a, "Lower bound of the metric")->capture_default_str();
  cost_cmd->add_option("--b", cost.hoeffding.b, "Upper bound of the metric")->capture_default_str();

  ValidateArgs validate;
  auto* validate_cmd = app.add_subcommand("validate", "Load and expand a workflow without running it");
  validate_cmd->add_option("config", validate.config, "Workflow YAML");
  validate_cmd->add_option("--dataset", validate.dataset, "Check a JSONL dataset instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*report_cmd) return cmd_report(report);
    if (*cost_cmd) return cmd_cost(cost);
    if (*validate_cmd) return cmd_validate(validate);
  } catch (const dms::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const dms::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kConfig;
  } catch (const dms::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const dms::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
