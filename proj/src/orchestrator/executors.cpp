#include "dms/orchestrator/executors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dms/analysis/entropy.hpp"
#include "dms/analysis/improvement.hpp"
#include "dms/analysis/pearson.hpp"
#include "dms/analysis/ranking.hpp"
#include "dms/analysis/recipes.hpp"
#include "dms/analysis/ward.hpp"
#include "dms/core/dataset_io.hpp"
#include "dms/core/digest.hpp"
#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/core/pool_io.hpp"
#include "dms/core/rng.hpp"
#include "dms/cost/cost_model.hpp"
#include "dms/ops/compute_stats.hpp"
#include "dms/ops/mapper.hpp"
#include "dms/ops/text.hpp"
#include "dms/orchestrator/early_stop.hpp"
#include "dms/orchestrator/iterative.hpp"
#include "dms/pools/compose.hpp"
#include "dms/pools/pyramid.hpp"
#include "dms/pools/random_control.hpp"
#include "dms/pools/schedule.hpp"
#include "dms/pools/tertiles.hpp"
#include "dms/reports/csv.hpp"
#include "dms/reports/reports.hpp"

namespace dms {

std::shared_ptr<const Dataset> DatasetCache::get(const fs::path& path) {
  const auto key = path.string();
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto loaded = std::make_shared<const Dataset>(load_dataset(path));
  std::lock_guard lock(mu_);
  return cache_.emplace(key, std::move(loaded)).first->second;
}

fs::path job_dir(const fs::path& workdir, const std::string& job_id) {
  return workdir / "jobs" / (safe_file_name(job_id) + "-" + sha256_hex(job_id).substr(0, 8));
}

std::vector<fs::path> job_input_files(const AtomicJob& job) {
  std::vector<fs::path> files;
  if (job.kind != "stats") return files;
  files.emplace_back(job.params.at("dataset").get<std::string>());
  for (const auto& spec : job.params.at("specs")) {
    for (const auto& [key, v] : spec.at("params").items()) {
      if (!v.is_string()) continue;
      if (key == "lexicon" || key == "counts") files.emplace_back(v.get<std::string>());
      if (key == "command") {
        fs::path first = v.get<std::string>().substr(0, v.get<std::string>().find(' '));
        if (first.is_absolute() && fs::is_regular_file(first)) files.push_back(first);
      }
    }
  }
  return files;
}

namespace {

class Executor {
 public:
  explicit Executor(const ExecContext& ctx) : ctx_(ctx), p_(ctx.job.params) {}

  ExecOutcome run() {
    static const std::map<std::string, void (Executor::*)()> kinds{
        {"stats", &Executor::stats},         {"pool", &Executor::pool},
        {"trial", &Executor::trial},         {"rank", &Executor::rank},
        {"correlate", &Executor::correlate}, {"recipes", &Executor::recipes},
        {"compare", &Executor::compare},     {"pyramid", &Executor::pyramid},
        {"curve", &Executor::curve},         {"sweep_rank", &Executor::sweep_rank},
        {"select", &Executor::select},       {"chain", &Executor::chain},
        {"cost", &Executor::cost},           {"diversity", &Executor::diversity},
    };
    auto it = kinds.find(ctx_.job.kind);
    if (it == kinds.end()) throw ConfigError("no executor for job kind '" + ctx_.job.kind + "'");
    (this->*(it->second))();
    return outcome_;
  }

 private:
  const ExecContext& ctx_;
  const Json& p_;
  ExecOutcome outcome_;

  fs::path dir_of(const std::string& id) const { return job_dir(ctx_.workdir, id); }

  Json output_of(const std::string& id) const { return Json::parse(read_file(dir_of(id) / kJobOutput)); }

  const AtomicJob& job_of(const std::string& id) const {
    const auto* j = ctx_.plan.find(id);
    if (!j) throw InvalidArgument("unknown job '" + id + "'");
    return *j;
  }

  std::shared_ptr<const Dataset> dataset(const std::string& key = "dataset_job") const {
    return ctx_.datasets.get(dir_of(p_.at(key).get<std::string>()) / "dataset.jsonl");
  }

  void write_output(const Json& j) const { write_file_atomic(ctx_.out_dir / kJobOutput, j.dump(2) + "\n"); }

  void write_report(const std::string& name, std::string_view content) const {
    fs::create_directories(ctx_.out_dir / kJobReport);
    write_file_atomic(ctx_.out_dir / kJobReport / name, content);
  }

  std::uint64_t seed(std::initializer_list<std::string_view> parts) const { return derive_seed(ctx_.plan.seed, parts); }

  // ---- stats -------------------------------------------------------------

  void stats() {
    Dataset ds = load_dataset(p_.at("dataset").get<std::string>());
    for (const auto& m : p_.at("mappers")) {
      ds = apply_mapper(ds, m.at("name").get<std::string>(), m.value("params", Json::object()),
                        ctx_.registries.mappers);
    }
    std::vector<StatSpec> specs = p_.at("specs").get<std::vector<StatSpec>>();
    ComputeOptions opts{ctx_.plan.config_dir, ctx_.plan.max_parallel};
    ds = compute_stats(ds, specs, ctx_.registries.ops, opts);
    const auto body = serialize_dataset(ds);
    write_file_atomic(ctx_.out_dir / "dataset.jsonl", body);
    Json names = Json::array();
    for (const auto& s : specs) names.push_back(s.stat_name);
    write_output(Json{{"dataset_digest", sha256_hex(body)}, {"samples", ds.size()}, {"stats", names}});
  }

  // ---- pools -------------------------------------------------------------

  void finish_pool(const DataPool& pool, Json extra = Json::object()) const {
    write_pool(ctx_.out_dir / "pool.json", pool);
    extra["pool_id"] = pool.pool_id;
    extra["size"] = pool.actual_size();
    extra["declared_size"] = pool.declared_size;
    extra["content_digest"] = pool_content_digest(pool.sample_ids);
    write_output(extra);
  }

  DataPool downsample(DataPool pool, std::size_t size, std::string_view tag) const {
    if (size == 0 || pool.sample_ids.size() <= size) return pool;
    Rng rng(seed({"downsample", ctx_.job.id, tag}));
    std::vector<std::string> kept;
    for (auto i : sample_indices(pool.sample_ids.size(), size, rng)) kept.push_back(pool.sample_ids[i]);
    pool.sample_ids = std::move(kept);
    pool.declared_size = size;
    return pool;
  }

  void pool() {
    const auto ds = dataset();
    const auto source = p_.at("source").get<std::string>();
    if (source == "split") {
      const auto op = p_.at("op").get<std::string>();
      const int b = p_.at("split").get<int>();
      auto result = split_buckets(*ds, op, p_.at("stat").get<std::string>(), p_.at("target").get<std::size_t>(),
                                  ctx_.plan.seed, p_.at("splits").get<int>());
      result.boundaries.dataset_digest = output_of(p_.at("dataset_job").get<std::string>()).at("dataset_digest");
      finish_pool(result.pools.at(static_cast<std::size_t>(b)),
                  Json{{"boundaries", result.boundaries}, {"group_size", result.group_sizes.at(b)}});
    } else if (source == "random") {
      finish_pool(sample_random_control(*ds, p_.at("size").get<std::size_t>(), seed({"random_pool"})));
    } else if (source == "random_like") {
      const auto size = output_of(p_.at("like_job").get<std::string>()).at("top_size").get<std::size_t>();
      auto pool = sample_random_control(*ds, size, seed({"random_like", ctx_.job.id}));
      finish_pool(pool);
    } else if (source == "recipe") {
      const auto recipes = output_of(p_.at("recipes_job").get<std::string>()).at("recipes");
      const auto index = p_.at("index").get<std::size_t>();
      if (index >= recipes.size()) {
        throw InvalidArgument("recipe " + std::to_string(index) + " was not proposed (" +
                              std::to_string(recipes.size()) + " recipes)");
      }
      const auto recipe = recipes.at(index).get<Recipe>();
      auto pool = compose_recipe(*ds, recipe, ctx_.registries.ops);
      finish_pool(downsample(std::move(pool), p_.at("size").get<std::size_t>(), "recipe"),
                  Json{{"recipe", recipe}});
    } else {
      throw InvalidArgument("unknown pool source '" + source + "'");
    }
  }

  // ---- pyramid -----------------------------------------------------------

  std::map<std::string, SplitBoundaries> boundaries() const {
    std::map<std::string, SplitBoundaries> out;
    for (const auto& [label, job] : p_.at("boundary_jobs").items()) {
      out[label] = output_of(job.get<std::string>()).at("boundaries").get<SplitBoundaries>();
    }
    return out;
  }

  std::vector<OpRankRow> ranking(const std::string& rank_job) const {
    std::vector<OpRankRow> rows;
    const auto out = output_of(rank_job);
    for (const auto& r : out.at("rows")) {
      OpRankRow row;
      row.op_name = r.at("op").get<std::string>();
      for (const auto& c : r.at("changes")) row.changes.push_back(number_from_json(c));
      row.best_split = r.at("best_split").get<int>();
      row.best_value = number_from_json(r.at("best_value"));
      rows.push_back(std::move(row));
    }
    return rows;
  }

  OperatorConfig op_at_split(const std::string& label, int split) const {
    OperatorConfig op;
    op.op_name = label;
    op.split = split;
    op.params = Json{{"stat_name", p_.at("stats").at(label)}};
    return op;
  }

  void pyramid() {
    const auto ds = dataset();
    const auto rows = ranking(p_.at("rank_job").get<std::string>());
    const auto top = p_.at("top").get<std::size_t>();
    Recipe r;
    for (std::size_t i = 0; i < top && i < rows.size(); ++i) {
      r.ops.push_back(op_at_split(rows[i].op_name, rows[i].best_split));
    }
    r = freeze_recipe(r, boundaries());
    const auto spec = build_pyramid(*ds, r.ops, ctx_.registries.ops, p_.at("max_ops").get<std::size_t>());
    auto j = pyramid_to_json(spec);
    j["top_size"] = spec.top().actual_size();
    write_output(j);
    write_report("pyramid.json", j.dump(2) + "\n");
  }

  PyramidSpec load_pyramid(const Dataset& ds, const std::string& job) const {
    const auto out = output_of(job);
    return build_pyramid(ds, out.at("top_ops").get<std::vector<OperatorConfig>>(), ctx_.registries.ops,
                         job_of(job).params.at("max_ops").get<std::size_t>());
  }

  // ---- trial -------------------------------------------------------------

  std::string workdir_relative(const std::string& path) const {
    const auto rel = fs::path(path).lexically_relative(ctx_.out_dir);
    if (rel.empty() || *rel.begin() == "..") return path;
    return fs::path(dir_of(ctx_.job.id).lexically_relative(ctx_.workdir) / rel).generic_string();
  }

  std::unique_ptr<Trainer> make_trainer() const {
    const auto& t = p_.at("trainer");
    Json params = t.at("params");
    const auto factory = t.at("factory").get<std::string>();
    if (factory == "synthetic" && !params.contains("seed")) params["seed"] = ctx_.plan.seed;
    return ctx_.registries.trainers.create(factory, params, ctx_.plan.config_dir);
  }

  void trial() {
    const auto ds = dataset();
    const auto pool_job = p_.at("pool_job").get<std::string>();
    TrainRequest req;
    req.dataset = ds.get();
    req.dataset_path = dir_of(p_.at("dataset_job").get<std::string>()) / "dataset.jsonl";
    req.hyperparams = p_.at("hyperparams");
    req.seed = seed({"trial", ctx_.job.id});
    req.work_dir = ctx_.out_dir / "trainer";
    fs::create_directories(req.work_dir);

    Json out{{"pool_job", pool_job}};
    if (job_of(pool_job).kind == "pyramid") {
      const auto pyr = load_pyramid(*ds, pool_job);
      req.pool = pyr.top();
      const auto& s = p_.at("schedule");
      auto sched = schedule_compute(*ds, pyr, s.at("k").get<std::size_t>(),
                                    schedule_mode_from_string(s.at("mode").get<std::string>()),
                                    seed({"schedule", ctx_.job.id}));
      out["schedule"] = to_json_summary(sched);
      req.sample_stream = std::move(sched.samples);
    } else {
      req.pool = read_pool(dir_of(pool_job) / "pool.json");
      if (p_.contains("schedule")) {
        const auto& s = p_.at("schedule");
        auto sched = schedule_compute(*ds, std::vector<DataPool>{req.pool}, s.at("k").get<std::size_t>(),
                                      schedule_mode_from_string(s.at("mode").get<std::string>()),
                                      seed({"schedule", ctx_.job.id}));
        out["schedule"] = to_json_summary(sched);
        req.sample_stream = std::move(sched.samples);
      }
    }
    req.pool_manifest_path = ctx_.out_dir / "pool.json";
    write_pool(req.pool_manifest_path, req.pool);
    if (p_.contains("checkpoint_job")) {
      const auto sel = output_of(p_.at("checkpoint_job").get<std::string>()).at("step");
      if (sel.at("checkpoint_out").is_null()) {
        throw ProtocolError("chain error: " + p_.at("checkpoint_job").get<std::string>() + " left no checkpoint");
      }
      req.checkpoint_in = (ctx_.workdir / sel.at("checkpoint_out").get<std::string>()).string();
      out["checkpoint_in"] = sel.at("checkpoint_out");
    }
    if (req.pool.sample_ids.empty()) {
      out["empty"] = true;
      out["metrics"] = nullptr;
      write_output(out);
      outcome_.message = "empty pool";
      return;
    }

    auto trainer = make_trainer();
    if (p_.contains("early_stop")) {
      const auto policy = p_.at("early_stop").get<EarlyStopPolicy>();
      const auto base_out = output_of(p_.at("baseline_job").get<std::string>());
      if (!base_out.at("metrics").is_null()) {
        if (auto partial = trainer->partial_eval(req, policy.fraction)) {
          const auto baseline = base_out.at("metrics").get<MetricVector>();
          const double a = policy_scalar(*partial, policy);
          const double b = policy_scalar(baseline, policy);
          const auto decision = early_stop_check(a, b, policy);
          out["early_stop"] = Json{{"fraction", policy.fraction},
                                   {"partial", number_to_json(a)},
                                   {"baseline", number_to_json(b)},
                                   {"margin", number_to_json(policy.margin)},
                                   {"decision", to_string(decision)}};
          if (decision == EarlyStopDecision::abort) {
            partial->wall_time = 0.0;
            out["metrics"] = *partial;
            write_output(out);
            outcome_.status = JobStatus::aborted;
            outcome_.message = "early stop: partial " + csv::format_number(a) + " < baseline " +
                               csv::format_number(b) + " - " + csv::format_number(policy.margin);
            return;
          }
        }
      }
    }

    auto result = trainer->train_eval(req);
    outcome_.message = "wall_time_s=" + csv::format_number(result.metrics.wall_time);
    result.metrics.wall_time = 0.0;
    out["metrics"] = result.metrics;
    if (result.checkpoint_out) {
      out["checkpoint_out"] = workdir_relative(*result.checkpoint_out);
      out["checkpoint_digest"] = file_digest(*result.checkpoint_out);
    }
    write_output(out);
  }

  // ---- ranking -----------------------------------------------------------

  MetricVector trial_metrics(const std::string& job) const {
    const auto out = output_of(job);
    if (out.value("empty", false)) throw InvalidArgument("trial '" + job + "' ran on an empty pool");
    return out.at("metrics").get<MetricVector>();
  }

  std::vector<TrialResult> trial_results() const {
    std::vector<TrialResult> trials;
    for (const auto& t : p_.at("trials")) {
      TrialResult r;
      r.pool_id = t.at("job").get<std::string>();
      r.baseline = t.value("baseline", false);
      if (!r.baseline) {
        r.op_name = t.at("op").get<std::string>();
        r.split = t.at("split").get<int>();
      }
      r.metrics = trial_metrics(r.pool_id);
      trials.push_back(std::move(r));
    }
    return trials;
  }

  static Json rows_json(const std::vector<OpRankRow>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
      Json changes = Json::array();
      for (double c : r.changes) changes.push_back(number_to_json(c));
      out.push_back({{"op", r.op_name},
                     {"changes", changes},
                     {"best_split", r.best_split},
                     {"best_value", number_to_json(r.best_value)}});
    }
    return out;
  }

  void rank() {
    const int splits = p_.at("splits").get<int>();
    const auto rows = rank_ops(rows_from_trials(trial_results(), splits));
    write_report("ranking.csv", ranking_csv(rows, splits));
    write_output(Json{{"rows", rows_json(rows)}});
  }

  void correlate() {
    const auto ds = dataset();
    std::vector<Series> series;
    for (const auto& s : p_.at("series")) {
      Series x{s.at("label").get<std::string>(), {}};
      const auto stat = s.at("stat").get<std::string>();
      x.values.reserve(ds->size());
      for (const auto& sample : ds->samples) x.values.push_back(sample.stats.at(stat));
      series.push_back(std::move(x));
    }
    const auto matrix = pearson_matrix(series);
    const auto clusters = ward_cluster_correlation(matrix, p_.at("k").get<std::size_t>());
    Json groups = Json::array();
    for (const auto& g : clusters.groups()) {
      Json members = Json::array();
      for (auto i : g) members.push_back(matrix.labels[i]);
      groups.push_back(members);
    }
    write_report("correlation.csv", correlation_csv(matrix));
    write_report("clusters.csv", clusters_csv(matrix.labels, clusters));
    write_output(Json{{"clusters", groups}, {"constant_series", matrix.constant_series}});
  }

  void recipes() {
    const auto rows = ranking(p_.at("rank_job").get<std::string>());
    std::vector<std::vector<std::string>> clusters;
    if (p_.contains("clusters_job")) {
      clusters = output_of(p_.at("clusters_job").get<std::string>()).at("clusters").get<decltype(clusters)>();
    }
    auto proposed = propose_recipes(rows, clusters, recipe_strategy_from_string(p_.at("strategy").get<std::string>()),
                                    p_.at("max_order").get<std::size_t>());
    const auto bounds = boundaries();
    Json out = Json::array();
    for (auto& r : proposed) {
      for (auto& op : r.ops) op.params["stat_name"] = p_.at("stats").at(op.op_name);
      out.push_back(freeze_recipe(r, bounds));
    }
    write_report("recipes.json", Json{{"recipes", out}}.dump(2) + "\n");
    write_output(Json{{"recipes", out}});
  }

  void compare() {
    const auto baseline = trial_metrics(p_.at("baseline_job").get<std::string>());
    struct Row {
      std::size_t index;
      std::string recipe;
      std::size_t ops;
      std::size_t pool_size;
      double improvement;
    };
    std::vector<Row> rows;
    for (const auto& t : p_.at("trials")) {
      const auto pool = output_of(t.at("pool_job").get<std::string>());
      const auto trial = output_of(t.at("job").get<std::string>());
      const auto recipe = pool.at("recipe").get<Recipe>();
      const bool empty = trial.value("empty", false);
      rows.push_back({t.at("index").get<std::size_t>(), pool.at("pool_id").get<std::string>(), recipe.ops.size(),
                      pool.at("size").get<std::size_t>(),
                      empty ? std::numeric_limits<double>::quiet_NaN() : relative_improvement(trial.at("metrics").get<MetricVector>(), baseline)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      if (std::isnan(a.improvement) != std::isnan(b.improvement)) return std::isnan(b.improvement);
      if (a.improvement != b.improvement) return a.improvement > b.improvement;
      return a.index < b.index;
    });
    std::string out = csv::row({"rank", "index", "recipe", "ops", "pool_size", "relative_improvement"});
    Json best = nullptr;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out += csv::row({std::to_string(i + 1), std::to_string(r.index), r.recipe, std::to_string(r.ops),
                       std::to_string(r.pool_size), csv::format_number(r.improvement)});
      if (i == 0 && !std::isnan(r.improvement)) best = Json{{"recipe", r.recipe}, {"improvement", r.improvement}};
    }
    write_report("recipes.csv", out);
    write_output(Json{{"best", best}, {"rows", rows.size()}});
  }

  // ---- scaling -----------------------------------------------------------

  void curve() {
    std::map<std::string, std::vector<CurvePoint>> by_mode;
    Json schedules = Json::object();
    for (const auto& pt : p_.at("points")) {
      const auto mode = pt.at("mode").get<std::string>();
      const auto trial = output_of(pt.at("trial").get<std::string>());
      const auto base = trial_metrics(pt.at("baseline").get<std::string>());
      const auto k = pt.at("k").get<std::size_t>();
      by_mode[mode].push_back({k, relative_improvement(trial_metrics(pt.at("trial").get<std::string>()), base)});
      schedules[mode][std::to_string(k)] = trial.at("schedule");
    }
    for (const auto& [mode, points] : by_mode) {
      std::string name = mode;
      std::replace(name.begin(), name.end(), '-', '_');
      write_report("scaling_curve_" + name + ".csv", scaling_curve_csv(points));
    }
    write_report("schedules.json", schedules.dump(2) + "\n");
    write_output(Json{{"modes", by_mode.size()}, {"schedules", schedules}});
  }

  // ---- sweep -------------------------------------------------------------

  void sweep_rank() {
    const auto& trials = p_.at("trials");
    const auto baseline_index = p_.at("baseline").get<std::size_t>();
    const auto baseline = trial_metrics(trials.at(baseline_index).at("job").get<std::string>());
    struct Row {
      std::size_t index;
      std::string point;
      double improvement;
    };
    std::vector<Row> rows;
    for (const auto& t : trials) {
      rows.push_back({t.at("index").get<std::size_t>(), t.at("point").dump(),
                      relative_improvement(trial_metrics(t.at("job").get<std::string>()), baseline)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      if (a.improvement != b.improvement) return a.improvement > b.improvement;
      return a.index < b.index;
    });
    std::string out = csv::row({"rank", "index", "point", "relative_improvement", "baseline"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out += csv::row({std::to_string(i + 1), std::to_string(rows[i].index), rows[i].point,
                       csv::format_number(rows[i].improvement), rows[i].index == baseline_index ? "1" : "0"});
    }
    write_report("sweep.csv", out);
    write_output(Json{{"best_index", rows.front().index}, {"best_improvement", number_to_json(rows.front().improvement)}});
  }

  // ---- iterative ---------------------------------------------------------

  void select() {
    const int splits = p_.at("splits").get<int>();
    const auto rows = rank_ops(rows_from_trials(trial_results(), splits));
    const auto& best = rows.front();
    std::string trial_job;
    for (const auto& t : p_.at("trials")) {
      if (!t.value("baseline", false) && t.at("op") == best.op_name && t.at("split") == best.best_split) {
        trial_job = t.at("job").get<std::string>();
      }
    }
    const auto trial = output_of(trial_job);
    IterationStep step;
    step.iteration = p_.at("iteration").get<int>();
    step.recipe = best.op_name + "/" + split_name(best.best_split, splits);
    step.trial_job = trial_job;
    step.improvement = best.best_value;
    if (trial.contains("checkpoint_in")) step.checkpoint_in = trial.at("checkpoint_in").get<std::string>();
    if (trial.contains("checkpoint_out")) step.checkpoint_out = trial.at("checkpoint_out").get<std::string>();
    if (!step.checkpoint_out && !p_.at("last").get<bool>()) {
      throw ProtocolError("chain error: iteration " + std::to_string(step.iteration) + " produced no checkpoint");
    }
    write_report("ranking.csv", ranking_csv(rows, splits));
    write_output(Json{{"step", step}});
  }

  void chain() {
    IterationChain c;
    for (const auto& s : p_.at("selects")) c.steps.push_back(output_of(s.get<std::string>()).at("step"));
    validate_chain(c);
    write_report("chain.json", Json(c).dump(2) + "\n");
    write_output(Json{{"iterations", c.steps.size()}, {"final", c.steps.back().recipe}});
  }

  // ---- cost / diversity --------------------------------------------------

  void cost() {
    CostParams cp;
    cp.t_full = p_.value("T_full", 1.0);
    cp.r = p_.value("r", 1.0);
    cp.M = p_.value("M", std::uint64_t{1});
    cp.m = p_.value("m", std::uint64_t{0});
    HoeffdingParams hp{p_.value("epsilon", 0.0), p_.value("a", 0.0), p_.value("b", 1.0)};
    Json report = cost_report(cp, hp);
    std::vector<CostLedgerEntry> entries;
    for (const auto& t : p_.at("trials")) {
      const auto id = t.get<std::string>();
      const auto out = output_of(id);
      std::uint64_t trained = 0;
      if (!out.at("metrics").is_null()) trained = out.at("metrics").value("trained_samples", std::uint64_t{0});
      entries.push_back({id, trained, p_.value("alpha_per_sample", 1.0), p_.value("unit", std::string("alpha"))});
    }
    const auto totals = ledger_total(entries);
    Json by_unit = Json::object();
    for (const auto& [u, v] : totals.by_unit) by_unit[u] = number_to_json(v);
    std::uint64_t samples = 0;
    for (const auto& [_, n] : totals.samples_by_run) samples += n;
    report["ledger"] = Json{{"entries", entries}, {"totals", by_unit}, {"trained_samples", samples}};
    write_report("cost.json", report.dump(2) + "\n");
    write_output(report);
  }

  void diversity() {
    const auto ds = dataset();
    const auto index = build_id_index(*ds);
    Json out = Json::object();
    for (const auto& [name, job] : p_.at("pools").items()) {
      const auto pool = read_pool(dir_of(job.get<std::string>()) / "pool.json");
      std::vector<std::string> texts;
      for (const auto& id : pool.sample_ids) texts.push_back(ds->samples[index.at(id)].text);
      bool has_tokens = false;
      for (const auto& t : texts) has_tokens = has_tokens || !text::whitespace_tokens(t).empty();
      if (!has_tokens) {
        out[name] = Json{{"documents", texts.size()}, {"total_tokens", 0}, {"entropy_nats", nullptr}};
        continue;
      }
      out[name] = to_json(diversity_report(texts, p_.at("top_n").get<std::size_t>()));
    }
    write_report("diversity.json", out.dump(2) + "\n");
    write_output(out);
  }
};

}  // namespace

ExecOutcome execute_job(const ExecContext& ctx) { return Executor(ctx).run(); }

}  // namespace dms
