#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "dms/core/dataset_io.hpp"
#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/core/ledger.hpp"
#include "dms/orchestrator/early_stop.hpp"
#include "dms/orchestrator/executors.hpp"
#include "dms/orchestrator/expand.hpp"
#include "dms/orchestrator/iterative.hpp"
#include "dms/orchestrator/runner.hpp"
#include "dms/orchestrator/sweep.hpp"
#include "dms/orchestrator/workflow.hpp"
#include "test_support.hpp"

namespace dms {
namespace {

using testing::data_path;

// A small corpus on disk plus helpers to load and run workflows over it.
class Sandbox : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng rng(17);
    Dataset d;
    for (int i = 0; i < 120; ++i) d.samples.push_back({generated_id(i), testing::random_text(rng, 30), {}, {}});
    write_dataset(dir.path() / "data.jsonl", d);
  }
  void TearDown() override { unsetenv("STUB_MODE"); }

  WorkflowPlan plan(const std::string& yaml, const std::string& workdir = "work") {
    auto p = parse_workflow(yaml, dir.path());
    p.workdir = dir.path() / workdir;
    return p;
  }
  Json output(const WorkflowPlan& p, const std::string& job) {
    return Json::parse(read_file(job_dir(p.workdir, job) / kJobOutput));
  }
  std::string report(const RunSummary& s, const std::string& job, const std::string& file) {
    return read_file(s.bundle_dir / safe_file_name(job) / file);
  }

  static std::string config(const std::string& ops, const std::string& extra_phases = "",
                            const std::string& probe_extra = "") {
    return "seed: 3\n"
           "registries:\n"
           "  trainers:\n"
           "    syn: {factory: synthetic, params: {base: 10, weights: {text_length: 1}, sigma: 0.01}}\n"
           "phases:\n"
           "  probe:\n"
           "    - id: p\n"
           "      kind: probe\n"
           "      params: {dataset: data.jsonl, target_pool_size: 30, trainer: syn, ops: " +
           ops + probe_extra + "}\n" + extra_phases;
  }

  TempDir dir;
  Registries registries;
};

TEST_F(Sandbox, SingleOpProbeExpandsToFourPoolsAndTrials) {
  const auto p = plan(config("[text_length_filter]"));
  EXPECT_EQ(p.count("pool"), 4u);
  EXPECT_EQ(p.count("trial"), 4u);
  EXPECT_EQ(p.count("rank"), 1u);
  EXPECT_EQ(p.count("stats"), 1u);
  ASSERT_NE(p.find("p/pool/random"), nullptr);
  EXPECT_EQ(p.find("p/rank")->phase, Phase::probe);
}

TEST_F(Sandbox, TwoOpProbeLedger) {
  const auto p = plan(config("[text_length_filter, alphanumeric_filter]"));
  const auto s = run_plan(p, registries);
  EXPECT_TRUE(s.ok());
  RunLedger ledger(p.workdir / kLedgerFile);
  std::map<std::string, int> kinds;
  for (const auto& e : ledger.entries()) {
    EXPECT_EQ(e.status, JobStatus::completed);
    ++kinds[e.job_kind];
  }
  EXPECT_EQ(kinds["pool"], 7);
  EXPECT_EQ(kinds["trial"], 7);
  EXPECT_EQ(kinds["rank"], 1);
  const auto ranking = report(s, "p/rank", "ranking.csv");
  EXPECT_EQ(ranking.rfind("op,low,mid,high,best_split,best_value\n", 0), 0u) << ranking;
}

TEST_F(Sandbox, SameSeedSameRanking) {
  const auto a = run_plan(plan(config("[text_length_filter, special_characters_filter]"), "w1"), registries);
  const auto b = run_plan(plan(config("[text_length_filter, special_characters_filter]"), "w2"), registries);
  EXPECT_EQ(report(a, "p/rank", "ranking.csv"), report(b, "p/rank", "ranking.csv"));
}

TEST_F(Sandbox, ResumeSkipsCompletedJobs) {
  const auto yaml = config("[text_length_filter]",
                           "  refine:\n    - {id: r, kind: recipes, params: {probe: p, max_order: 1}}\n");
  const auto p = plan(yaml);
  RunOptions halt;
  halt.halt_after_phase = Phase::probe;
  const auto first = run_plan(p, registries, halt);
  EXPECT_TRUE(first.halted);
  EXPECT_EQ(first.executed, p.jobs.size() - 1);
  RunOptions resume;
  resume.resume = true;
  const auto second = run_plan(p, registries, resume);
  EXPECT_EQ(second.resumed, p.jobs.size() - 1);
  EXPECT_EQ(second.executed, 1u);
  const auto third = run_plan(p, registries, resume);
  EXPECT_EQ(third.resumed, p.jobs.size());
  EXPECT_EQ(third.executed, 0u);
}

TEST_F(Sandbox, ResumeRebuildsJobWithMissingOutput) {
  const auto p = plan(config("[text_length_filter]"));
  run_plan(p, registries);
  fs::remove_all(job_dir(p.workdir, "p/rank"));
  RunOptions resume;
  resume.resume = true;
  const auto s = run_plan(p, registries, resume);
  EXPECT_EQ(s.executed, 1u);
  EXPECT_TRUE(fs::exists(job_dir(p.workdir, "p/rank") / kJobOutput));
}

TEST_F(Sandbox, FailedJobSkipsOnlyDependents) {
  const auto yaml =
      "seed: 1\n"
      "registries:\n"
      "  trainers:\n"
      "    syn: {factory: synthetic, params: {base: 1}}\n"
      "    bad: {factory: external, params: {command: 'echo boom >&2; exit 1'}}\n"
      "phases:\n"
      "  probe:\n"
      "    - {id: good, kind: probe, params: {dataset: data.jsonl, target_pool_size: 20, trainer: syn, ops: "
      "[text_length_filter]}}\n"
      "    - {id: broken, kind: probe, params: {dataset: data.jsonl, target_pool_size: 20, trainer: bad, ops: "
      "[text_length_filter]}}\n";
  const auto p = plan(yaml);
  const auto s = run_plan(p, registries);
  EXPECT_FALSE(s.ok());
  EXPECT_EQ(s.failed, 4u);
  EXPECT_EQ(s.skipped, 1u);
  EXPECT_TRUE(fs::exists(job_dir(p.workdir, "good/rank") / kJobOutput));
  RunLedger ledger(p.workdir / kLedgerFile);
  bool saw_stderr = false;
  for (const auto& e : ledger.entries()) {
    if (e.status == JobStatus::failed) saw_stderr = saw_stderr || e.message.find("boom") != std::string::npos;
  }
  EXPECT_TRUE(saw_stderr);
}

TEST_F(Sandbox, UnknownHookRejectedAtLoad) {
  EXPECT_THROW(plan("registries: {hooks: [foo]}\nphases: {}\n"), ConfigError);
  EXPECT_THROW(plan("phases:\n  probe:\n    - {id: a, kind: cost, hooks: [foo]}\n"), ConfigError);
}

TEST_F(Sandbox, EmptyPhasesIsNoOp) {
  const auto p = plan("phases: {probe: [], refine: [], execute: [], evaluate: []}\n");
  EXPECT_TRUE(p.jobs.empty());
  const auto s = run_plan(p, registries);
  EXPECT_TRUE(s.ok());
  EXPECT_EQ(s.executed, 0u);
}

TEST_F(Sandbox, SchemaErrors) {
  EXPECT_THROW(plan("phases:\n  probe:\n    - {id: a, kind: cost}\n    - {id: a, kind: cost}\n"), ConfigError);
  EXPECT_THROW(plan("phases:\n  probe:\n    - {id: a, kind: teleport}\n"), ConfigError);
  EXPECT_THROW(plan("phases:\n  probe:\n    - {id: a, kind: cost, needs: [b]}\n    - {id: b, kind: cost}\n"),
               ConfigError);
  EXPECT_THROW(plan("bogus: 1\n"), ConfigError);
  EXPECT_THROW(plan(config("[no_such_filter]")), ConfigError);
  try {
    plan("seed: 1\nphases:\n  probe: [\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GE(e.line(), 3u);
  }
}

TEST_F(Sandbox, HookLogRecordsEveryJob) {
  auto yaml = config("[text_length_filter]");
  yaml.replace(yaml.find("registries:\n"), 12, "registries:\n  hooks: [job_log]\n");
  const auto p = plan(yaml);
  run_plan(p, registries);
  const auto log = read_file(p.workdir / "hooks.log");
  EXPECT_EQ(static_cast<std::size_t>(std::count(log.begin(), log.end(), '\n')), p.jobs.size());
  EXPECT_NE(log.find("p/rank\tcompleted"), std::string::npos);
}

TEST(EarlyStop, Comparator) {
  EarlyStopPolicy p;
  p.fraction = 0.5;
  p.margin = 0.05;
  EXPECT_EQ(early_stop_check(0.40, 0.50, p), EarlyStopDecision::abort);
  EXPECT_EQ(early_stop_check(0.46, 0.50, p), EarlyStopDecision::proceed);
  // Exactly baseline - margin continues.
  p.margin = 0.25;
  EXPECT_EQ(early_stop_check(0.25, 0.50, p), EarlyStopDecision::proceed);
  EXPECT_EQ(early_stop_check(std::nextafter(0.25, 0.0), 0.50, p), EarlyStopDecision::abort);
  p.margin = kInf;
  EXPECT_EQ(early_stop_check(-1e300, 0.50, p), EarlyStopDecision::proceed);
}

TEST(EarlyStop, PolicyParsing) {
  EXPECT_THROW(Json({{"fraction", 0.0}}).get<EarlyStopPolicy>(), ConfigError);
  EXPECT_THROW(Json({{"fraction", 1.5}}).get<EarlyStopPolicy>(), ConfigError);
  const auto p = Json({{"fraction", 0.25}, {"margin", "inf"}}).get<EarlyStopPolicy>();
  EXPECT_EQ(p.margin, kInf);
  MetricVector mv;
  mv.metrics = {{"a", 1}, {"b", 3}};
  EXPECT_EQ(policy_scalar(mv, p), 2.0);
  EarlyStopPolicy named;
  named.metric = "b";
  EXPECT_EQ(policy_scalar(mv, named), 3.0);
  named.metric = "c";
  EXPECT_THROW(policy_scalar(mv, named), InvalidArgument);
}

TEST_F(Sandbox, EarlyStopAbortsWeakTrials) {
  const auto strict = run_plan(plan(config("[text_length_filter]", "", ", early_stop: {fraction: 0.5, margin: 0}"),
                                    "strict"),
                               registries);
  EXPECT_GE(strict.aborted, 1u);
  EXPECT_TRUE(strict.ok());
  const auto lax = run_plan(plan(config("[text_length_filter]", "", ", early_stop: {fraction: 0.5, margin: .inf}"),
                                 "lax"),
                            registries);
  EXPECT_EQ(lax.aborted, 0u);
}

TEST(Sweep, GridExpansion) {
  auto g = expand_grid(Json{{"grid", {{"b", {1, 2}}, {"a", {"x", "y", "z"}}}}});
  ASSERT_EQ(g.points.size(), 6u);
  EXPECT_EQ(g.points[1], (Json{{"a", "x"}, {"b", 2}}));
  g = expand_grid(Json{{"grid", {{"prompt", {"only"}}}}});
  EXPECT_EQ(g.points.size(), 1u);
  g = expand_grid(Json{{"points", {{{"lr", 1}}, {{"lr", 2}}, {{"lr", 1}}}}});
  EXPECT_EQ(g.points.size(), 2u);
  EXPECT_EQ(g.warnings.size(), 1u);
  EXPECT_THROW(expand_grid(Json{{"grid", {{"a", Json::array()}}}}), InvalidArgument);
  EXPECT_THROW(expand_grid(Json::object()), InvalidArgument);
}

TEST_F(Sandbox, TenPromptSweep) {
  std::string prompts = "[";
  for (int i = 0; i < 10; ++i) prompts += (i ? ", p" : "p") + std::to_string(i);
  prompts += "]";
  const auto p = plan(config("[text_length_filter]",
                             "  execute:\n    - {id: w, kind: sweep, params: {probe: p, trainer: syn, grid: {prompt: " +
                                 prompts + "}}}\n"));
  EXPECT_EQ(p.count("trial"), 4u + 10u);
  EXPECT_EQ(p.count("sweep_rank"), 1u);
  const auto s = run_plan(p, registries);
  ASSERT_TRUE(s.ok());
  const auto csv = report(s, "w/rank", "sweep.csv");
  EXPECT_EQ(static_cast<int>(std::count(csv.begin(), csv.end(), '\n')), 11);
}

TEST_F(Sandbox, SweepDuplicatesWarn) {
  const auto p = plan(config("[text_length_filter]",
                             "  execute:\n    - {id: w, kind: sweep, params: {probe: p, trainer: syn, grid: {prompt: "
                             "[a, b, a]}}}\n"));
  EXPECT_EQ(p.count("trial"), 4u + 2u);
  ASSERT_EQ(p.warnings.size(), 1u);
  EXPECT_NE(p.warnings[0].find("duplicate"), std::string::npos);
}

TEST_F(Sandbox, IterateThreadsCheckpoints) {
  const auto p = plan(config("[text_length_filter]",
                             "  execute:\n    - {id: it, kind: iterate, params: {probe: p, trainer: syn, iterations: 2}}\n"));
  const auto s = run_plan(p, registries);
  ASSERT_TRUE(s.ok());
  const auto chain = Json::parse(report(s, "it/chain", "chain.json")).get<IterationChain>();
  ASSERT_EQ(chain.steps.size(), 2u);
  EXPECT_FALSE(chain.steps[0].checkpoint_in.has_value());
  EXPECT_EQ(chain.steps[1].checkpoint_in, chain.steps[0].checkpoint_out);
  EXPECT_NO_THROW(validate_chain(chain));
}

TEST_F(Sandbox, SingleIterationIsPlainRun) {
  const auto p = plan(config("[text_length_filter]",
                             "  execute:\n    - {id: it, kind: iterate, params: {probe: p, trainer: syn, iterations: 1}}\n"));
  EXPECT_EQ(p.count("select"), 1u);
  EXPECT_TRUE(run_plan(p, registries).ok());
}

TEST_F(Sandbox, IterateNeedsCheckpointCapableTrainer) {
  const auto yaml =
      "registries:\n  trainers:\n    t: {factory: synthetic, params: {base: 1, checkpoints: false}}\n"
      "phases:\n  probe:\n    - {id: p, kind: probe, params: {dataset: data.jsonl, target_pool_size: 10, "
      "trainer: t, ops: [text_length_filter]}}\n"
      "  execute:\n    - {id: it, kind: iterate, params: {probe: p, trainer: t, iterations: 2}}\n";
  EXPECT_THROW(plan(yaml), ConfigError);
}

TEST_F(Sandbox, MissingCheckpointOutIsChainError) {
  const auto yaml = "registries:\n  trainers:\n    t: {factory: external, params: {command: " +
                    data_path("stubs/trainer.sh").string() +
                    "}}\n"
                    "phases:\n  probe:\n    - {id: p, kind: probe, params: {dataset: data.jsonl, target_pool_size: "
                    "10, trainer: t, ops: [text_length_filter]}}\n"
                    "  execute:\n    - {id: it, kind: iterate, params: {probe: p, trainer: t, iterations: 2}}\n";
  const auto p = plan(yaml);
  const auto s = run_plan(p, registries);
  ASSERT_EQ(s.failed_jobs.size(), 1u);
  EXPECT_EQ(s.failed_jobs[0], "it/it1/select");
  RunLedger ledger(p.workdir / kLedgerFile);
  for (const auto& e : ledger.entries()) {
    if (e.job_id == "it/it1/select") EXPECT_NE(e.message.find("checkpoint"), std::string::npos) << e.message;
  }
}

TEST(Chain, Validation) {
  IterationChain c;
  EXPECT_THROW(validate_chain(c), ProtocolError);
  c.steps.push_back({1, "r", "t1", 0.0, std::nullopt, "ck1"});
  c.steps.push_back({2, "r", "t2", 0.0, "ck1", std::nullopt});
  EXPECT_NO_THROW(validate_chain(c));
  c.steps[1].checkpoint_in = "other";
  EXPECT_THROW(validate_chain(c), ProtocolError);
  c.steps[1].checkpoint_in = "ck1";
  c.steps[0].checkpoint_out.reset();
  EXPECT_THROW(validate_chain(c), ProtocolError);
  c.steps[0].checkpoint_out = "ck1";
  c.steps[1].iteration = 3;
  EXPECT_THROW(validate_chain(c), ProtocolError);
}

TEST(RecipeCount, SubsetsUpToOrder) {
  EXPECT_EQ(recipe_count(3, 3), 7u);
  EXPECT_EQ(recipe_count(5, 1), 5u);
  EXPECT_EQ(recipe_count(5, 2), 15u);
  EXPECT_EQ(recipe_count(2, 9), 3u);
}

TEST(InputDigest, DependsOnEveryInput) {
  AtomicJob j;
  j.id = "a";
  j.kind = "rank";
  j.params = {{"x", 1}};
  j.needs = {"n"};
  const auto base = job_input_digest(j, 1, {{"n", "d1"}});
  EXPECT_EQ(base, job_input_digest(j, 1, {{"n", "d1"}}));
  EXPECT_NE(base, job_input_digest(j, 2, {{"n", "d1"}}));
  EXPECT_NE(base, job_input_digest(j, 1, {{"n", "d2"}}));
  j.params = {{"x", 2}};
  EXPECT_NE(base, job_input_digest(j, 1, {{"n", "d1"}}));
}

}  // namespace
}  // namespace dms
