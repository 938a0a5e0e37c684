#include "dms/orchestrator/expand.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dms/analysis/ranking.hpp"
#include "dms/analysis/recipes.hpp"
#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/orchestrator/early_stop.hpp"
#include "dms/orchestrator/sweep.hpp"
#include "dms/pools/pyramid.hpp"
#include "dms/pools/schedule.hpp"
#include "dms/pools/tertiles.hpp"

namespace dms {

std::vector<std::string> macro_kinds() {
  return {"probe", "correlate", "recipes", "compose", "scale", "sweep", "iterate", "cost", "diversity"};
}

std::size_t recipe_count(std::size_t candidates, std::size_t max_order) {
  std::size_t total = 0;
  std::size_t c = 1;  // C(candidates, i)
  for (std::size_t i = 1; i <= std::min(candidates, max_order); ++i) {
    c = c * (candidates - i + 1) / i;
    total += c;
  }
  return total;
}

namespace {

struct ProbeInfo {
  std::string id;
  std::vector<std::string> labels;
  std::map<std::string, std::string> stats;  // label -> stat name
  int splits = 3;
  std::string stats_job;
  std::string rank_job;
  std::string baseline_trial;
  std::string random_pool;
  std::vector<std::string> trials;  // including the baseline
  std::vector<std::string> pools;

  std::string pool_job(const std::string& label, int b) const {
    return id + "/pool/" + label + "/" + split_name(b, splits);
  }
  std::string trial_job(const std::string& label, int b) const {
    return id + "/trial/" + label + "/" + split_name(b, splits);
  }
};

struct RecipesInfo {
  std::string id;
  std::string probe;
  std::size_t count = 0;
};

class Expander {
 public:
  Expander(WorkflowPlan& plan, const Registries& reg) : plan_(plan), reg_(reg) {}

  void run() {
    for (auto phase : kPhases) {
      for (const auto& m : plan_.phases[static_cast<std::size_t>(phase)]) expand(m);
    }
  }

 private:
  WorkflowPlan& plan_;
  const Registries& reg_;
  std::map<std::string, const MacroJob*> declared_;
  std::map<std::string, std::vector<std::string>> atomic_of_;
  std::map<std::string, ProbeInfo> probes_;
  std::map<std::string, std::size_t> correlate_k_;
  std::map<std::string, std::string> correlate_probe_;
  std::map<std::string, RecipesInfo> recipes_;
  std::set<std::string> ids_;
  const MacroJob* current_ = nullptr;
  std::vector<std::string> base_needs_;

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError("job '" + current_->id + "': " + msg); }

  void add(std::string id, std::string kind, Json params, std::vector<std::string> needs) {
    if (!ids_.insert(id).second) fail("expands to duplicate job id '" + id + "'");
    AtomicJob a;
    a.id = std::move(id);
    a.kind = std::move(kind);
    a.params = std::move(params);
    for (const auto& n : base_needs_) needs.push_back(n);
    std::sort(needs.begin(), needs.end());
    needs.erase(std::unique(needs.begin(), needs.end()), needs.end());
    a.needs = std::move(needs);
    a.hooks = plan_.hooks;
    for (const auto& h : current_->hooks) a.hooks.push_back(h);
    a.phase = current_->phase;
    a.macro_id = current_->id;
    atomic_of_[current_->id].push_back(a.id);
    plan_.jobs.push_back(std::move(a));
  }

  const MacroJob& referenced(const std::string& key, const std::string& kind) {
    const auto& p = current_->params;
    if (!p.contains(key) || !p.at(key).is_string()) fail("params." + key + " must name a " + kind + " job");
    const auto name = p.at(key).get<std::string>();
    auto it = declared_.find(name);
    if (it == declared_.end()) fail("references '" + name + "', which is not declared before it");
    if (it->second->kind != kind) fail("'" + name + "' is a " + it->second->kind + " job, expected " + kind);
    return *it->second;
  }

  const ProbeInfo& probe_ref(const std::string& key = "probe") { return probes_.at(referenced(key, "probe").id); }

  std::int64_t int_param(const std::string& key, std::int64_t min, std::optional<std::int64_t> def = std::nullopt) {
    const auto& p = current_->params;
    if (!p.contains(key)) {
      if (def) return *def;
      fail("params." + key + " is required");
    }
    if (!p.at(key).is_number_integer()) fail("params." + key + " must be an integer");
    const auto v = p.at(key).get<std::int64_t>();
    if (v < min) fail("params." + key + " must be >= " + std::to_string(min));
    return v;
  }

  Json trainer_param() {
    const auto& p = current_->params;
    if (!p.contains("trainer") || !p.at("trainer").is_string()) fail("params.trainer must name a registered trainer");
    const auto name = p.at("trainer").get<std::string>();
    auto it = plan_.trainers.find(name);
    if (it == plan_.trainers.end()) fail("unknown trainer '" + name + "'");
    return Json{{"name", name}, {"factory", it->second.factory}, {"params", it->second.params}};
  }

  Json hyperparams() {
    const auto hp = current_->params.value("hyperparams", Json::object());
    if (!hp.is_object()) fail("params.hyperparams must be a mapping");
    return hp;
  }

  std::string resolve_command(std::string command) const {
    if (command.rfind("./", 0) == 0 || command.rfind("../", 0) == 0) {
      command = (plan_.config_dir / command).lexically_normal().string();
    }
    return command;
  }

  Json trial_params(const std::string& pool_job, const std::string& dataset_job, const Json& trainer,
                    const Json& hp) {
    return Json{{"pool_job", pool_job}, {"dataset_job", dataset_job}, {"trainer", trainer}, {"hyperparams", hp}};
  }

  void expand(const MacroJob& m) {
    current_ = &m;
    base_needs_.clear();
    for (const auto& n : m.needs) {
      auto it = atomic_of_.find(n);
      if (it == atomic_of_.end()) fail("needs '" + n + "', which is not declared before it");
      base_needs_.insert(base_needs_.end(), it->second.begin(), it->second.end());
    }
    if (m.kind == "probe") {
      probe(m);
    } else if (m.kind == "correlate") {
      correlate(m);
    } else if (m.kind == "recipes") {
      recipes(m);
    } else if (m.kind == "compose") {
      compose(m);
    } else if (m.kind == "scale") {
      scale(m);
    } else if (m.kind == "sweep") {
      sweep(m);
    } else if (m.kind == "iterate") {
      iterate(m);
    } else if (m.kind == "cost") {
      cost(m);
    } else if (m.kind == "diversity") {
      diversity(m);
    } else {
      fail("unknown job kind '" + m.kind + "'");
    }
    declared_[m.id] = &m;
  }

  void probe(const MacroJob& m) {
    const auto& p = m.params;
    ProbeInfo info;
    info.id = m.id;
    if (!p.contains("dataset") || !p.at("dataset").is_string()) fail("params.dataset must be a path");
    const auto dataset = (plan_.config_dir / p.at("dataset").get<std::string>()).lexically_normal().string();
    info.splits = static_cast<int>(int_param("splits", kMinSplits, 3));
    if (info.splits > kMaxSplits) fail("params.splits must be at most 5");
    const auto target = int_param("target_pool_size", 1);
    const auto random_size = int_param("random_size", 1, target);
    const auto trainer = trainer_param();
    const auto hp = hyperparams();
    std::optional<Json> early;
    if (p.contains("early_stop")) {
      try {
        early = Json(p.at("early_stop").get<EarlyStopPolicy>());
      } catch (const ConfigError& e) {
        fail(e.what());
      }
    }

    if (!p.contains("ops") || !p.at("ops").is_array() || p.at("ops").empty()) fail("params.ops must be a non-empty list");
    Json specs = Json::array();
    std::set<std::string> stat_names;
    for (const auto& item : p.at("ops")) {
      Json o = item.is_string() ? Json{{"op", item}} : item;
      if (!o.is_object() || !o.contains("op") || !o.at("op").is_string()) fail("each op needs an \"op\" name");
      for (const auto& [k, _] : o.items()) {
        if (k != "op" && k != "name" && k != "params" && k != "stat_name" && k != "scorer") {
          fail("unknown op key '" + k + "'");
        }
      }
      const auto op_name = o.at("op").get<std::string>();
      const auto label = o.value("name", op_name);
      if (label.find('/') != std::string::npos) fail("op label '" + label + "' must not contain '/'");
      StatSpec spec;
      spec.op_name = op_name;
      spec.stat_name = o.value("stat_name", std::string{});
      if (o.contains("scorer")) {
        const auto scorer = o.at("scorer").get<std::string>();
        auto it = plan_.scorers.find(scorer);
        if (it == plan_.scorers.end()) fail("unknown scorer '" + scorer + "'");
        spec.params = it->second;
        spec.params["command"] = resolve_command(spec.params.at("command").get<std::string>());
        if (spec.stat_name.empty()) spec.stat_name = label;
      } else {
        const auto* desc = reg_.ops.find(op_name);
        if (!desc) fail("unknown operator '" + op_name + "'");
        try {
          spec.params = reg_.ops.validate_params(*desc, o.value("params", Json::object()), plan_.config_dir);
        } catch (const InvalidArgument& e) {
          fail(e.what());
        }
        if (spec.stat_name.empty()) spec.stat_name = desc->stat_name;
      }
      if (std::find(info.labels.begin(), info.labels.end(), label) != info.labels.end()) {
        fail("op label '" + label + "' repeats; set \"name\" to tell them apart");
      }
      if (!stat_names.insert(spec.stat_name).second) {
        fail("statistic '" + spec.stat_name + "' is written twice; set \"stat_name\"");
      }
      info.labels.push_back(label);
      info.stats[label] = spec.stat_name;
      specs.push_back(spec);
    }
    Json mappers = p.value("mappers", Json::array());
    if (!mappers.is_array()) fail("params.mappers must be a list");
    for (auto& mp : mappers) {
      if (mp.is_string()) mp = Json{{"name", mp}, {"params", Json::object()}};
      if (!mp.is_object() || !mp.contains("name") || !reg_.mappers.find(mp.at("name").get<std::string>())) {
        fail("unknown mapper " + mp.dump());
      }
    }

    info.stats_job = m.id + "/stats";
    add(info.stats_job, "stats", Json{{"dataset", dataset}, {"specs", specs}, {"mappers", mappers}}, {});
    info.random_pool = m.id + "/pool/random";
    for (const auto& label : info.labels) {
      for (int b = 0; b < info.splits; ++b) {
        const auto id = info.pool_job(label, b);
        add(id, "pool",
            Json{{"source", "split"}, {"op", label}, {"stat", info.stats.at(label)}, {"split", b},
                 {"splits", info.splits}, {"target", target}, {"dataset_job", info.stats_job}},
            {info.stats_job});
        info.pools.push_back(id);
      }
    }
    add(info.random_pool, "pool", Json{{"source", "random"}, {"size", random_size}, {"dataset_job", info.stats_job}},
        {info.stats_job});
    info.pools.push_back(info.random_pool);

    info.baseline_trial = m.id + "/trial/random";
    auto base = trial_params(info.random_pool, info.stats_job, trainer, hp);
    base["baseline"] = true;
    add(info.baseline_trial, "trial", base, {info.random_pool, info.stats_job});
    Json rank_trials = Json::array({{{"job", info.baseline_trial}, {"baseline", true}}});
    std::vector<std::string> rank_needs{info.baseline_trial};
    for (const auto& label : info.labels) {
      for (int b = 0; b < info.splits; ++b) {
        const auto id = info.trial_job(label, b);
        auto tp = trial_params(info.pool_job(label, b), info.stats_job, trainer, hp);
        std::vector<std::string> needs{info.pool_job(label, b), info.stats_job};
        if (early) {
          tp["early_stop"] = *early;
          tp["baseline_job"] = info.baseline_trial;
          needs.push_back(info.baseline_trial);
        }
        add(id, "trial", tp, needs);
        info.trials.push_back(id);
        rank_trials.push_back({{"job", id}, {"op", label}, {"split", b}});
        rank_needs.push_back(id);
      }
    }
    info.trials.push_back(info.baseline_trial);
    info.rank_job = m.id + "/rank";
    add(info.rank_job, "rank", Json{{"trials", rank_trials}, {"splits", info.splits}}, rank_needs);
    probes_[m.id] = std::move(info);
  }

  void correlate(const MacroJob& m) {
    const auto& probe = probe_ref();
    std::vector<std::string> labels = probe.labels;
    if (m.params.contains("ops")) {
      labels.clear();
      for (const auto& l : m.params.at("ops")) {
        const auto s = l.get<std::string>();
        if (!probe.stats.count(s)) fail("probe '" + probe.id + "' has no op '" + s + "'");
        labels.push_back(s);
      }
    }
    if (labels.size() < 1) fail("nothing to correlate");
    const auto k = int_param("k", 1, std::min<std::int64_t>(3, static_cast<std::int64_t>(labels.size())));
    if (static_cast<std::size_t>(k) > labels.size()) fail("params.k exceeds the number of ops");
    Json series = Json::array();
    for (const auto& l : labels) series.push_back({{"label", l}, {"stat", probe.stats.at(l)}});
    add(m.id, "correlate", Json{{"dataset_job", probe.stats_job}, {"series", series}, {"k", k}}, {probe.stats_job});
    correlate_k_[m.id] = static_cast<std::size_t>(k);
    correlate_probe_[m.id] = probe.id;
  }

  Json boundary_jobs(const ProbeInfo& probe) {
    Json b = Json::object();
    for (const auto& l : probe.labels) b[l] = probe.pool_job(l, 0);
    return b;
  }

  std::vector<std::string> boundary_needs(const ProbeInfo& probe) {
    std::vector<std::string> out;
    for (const auto& l : probe.labels) out.push_back(probe.pool_job(l, 0));
    return out;
  }

  void recipes(const MacroJob& m) {
    const auto& probe = probe_ref();
    const auto strategy_name = m.params.value("strategy", std::string("top-k"));
    RecipeStrategy strategy = RecipeStrategy::top_k;
    try {
      strategy = recipe_strategy_from_string(strategy_name);
    } catch (const InvalidArgument& e) {
      fail(e.what());
    }
    const auto max_order = static_cast<std::size_t>(int_param("max_order", 1));
    if (max_order > probe.labels.size()) fail("params.max_order exceeds the number of probed ops");
    if (max_order > kMaxRecipeOrder) fail("params.max_order above " + std::to_string(kMaxRecipeOrder));
    Json params{{"rank_job", probe.rank_job}, {"boundary_jobs", boundary_jobs(probe)}, {"stats", probe.stats},
                {"strategy", strategy_name}, {"max_order", max_order}};
    auto needs = boundary_needs(probe);
    needs.push_back(probe.rank_job);
    RecipesInfo info{m.id, probe.id, recipe_count(max_order, max_order)};
    if (strategy == RecipeStrategy::cluster_representative) {
      const auto& c = referenced("correlate", "correlate");
      if (correlate_probe_.at(c.id) != probe.id) fail("correlate job '" + c.id + "' is over a different probe");
      params["clusters_job"] = c.id;
      needs.push_back(c.id);
      const auto reps = std::min(correlate_k_.at(c.id), kMaxRecipeOrder);
      info.count = recipe_count(reps, max_order);
    }
    add(m.id, "recipes", params, needs);
    recipes_[m.id] = info;
  }

  void compose(const MacroJob& m) {
    const auto& r = recipes_.at(referenced("recipes", "recipes").id);
    const auto& probe = probes_.at(r.probe);
    const auto trainer = trainer_param();
    const auto hp = hyperparams();
    const auto pool_size = int_param("pool_size", 0, 0);
    Json trials = Json::array();
    std::vector<std::string> needs{probe.baseline_trial, r.id};
    for (std::size_t i = 0; i < r.count; ++i) {
      const auto pool = m.id + "/pool/" + std::to_string(i);
      const auto trial = m.id + "/trial/" + std::to_string(i);
      add(pool, "pool",
          Json{{"source", "recipe"}, {"recipes_job", r.id}, {"index", i}, {"size", pool_size},
               {"dataset_job", probe.stats_job}},
          {r.id, probe.stats_job});
      add(trial, "trial", trial_params(pool, probe.stats_job, trainer, hp), {pool, probe.stats_job});
      trials.push_back({{"job", trial}, {"pool_job", pool}, {"index", i}});
      needs.push_back(trial);
    }
    add(m.id + "/report", "compare", Json{{"trials", trials}, {"baseline_job", probe.baseline_trial}, {"recipes_job", r.id}},
        needs);
  }

  void scale(const MacroJob& m) {
    const auto& probe = probe_ref();
    const auto top = static_cast<std::size_t>(int_param("top", 1));
    if (top > probe.labels.size()) fail("params.top exceeds the number of probed ops");
    const auto max_ops = static_cast<std::size_t>(int_param("max_ops", 1, kDefaultMaxPyramidOps));
    if (top > max_ops) fail("params.top exceeds the pyramid maximum of " + std::to_string(max_ops));
    if (!m.params.contains("k_values") || !m.params.at("k_values").is_array() || m.params.at("k_values").empty()) {
      fail("params.k_values must be a non-empty list");
    }
    std::vector<std::size_t> ks;
    for (const auto& k : m.params.at("k_values")) {
      if (!k.is_number_integer() || k.get<std::int64_t>() < 1) fail("k_values must be positive integers");
      ks.push_back(k.get<std::size_t>());
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::vector<std::string> modes{"repetitive"};
    if (m.params.contains("modes")) {
      modes.clear();
      for (const auto& md : m.params.at("modes")) {
        try {
          modes.emplace_back(to_string(schedule_mode_from_string(md.get<std::string>())));
        } catch (const InvalidArgument& e) {
          fail(e.what());
        }
      }
    }
    const auto trainer = trainer_param();
    const auto hp = hyperparams();

    const auto pyramid = m.id + "/pyramid";
    auto needs = boundary_needs(probe);
    needs.push_back(probe.rank_job);
    needs.push_back(probe.stats_job);
    add(pyramid, "pyramid",
        Json{{"rank_job", probe.rank_job}, {"boundary_jobs", boundary_jobs(probe)}, {"stats", probe.stats},
             {"top", top}, {"max_ops", max_ops}, {"dataset_job", probe.stats_job}},
        needs);
    const auto random = m.id + "/pool/random";
    add(random, "pool", Json{{"source", "random_like"}, {"like_job", pyramid}, {"dataset_job", probe.stats_job}},
        {pyramid, probe.stats_job});
    Json points = Json::array();
    std::vector<std::string> curve_needs;
    for (auto k : ks) {
      const auto base = m.id + "/baseline/" + std::to_string(k);
      auto bp = trial_params(random, probe.stats_job, trainer, hp);
      bp["schedule"] = {{"mode", "repetitive"}, {"k", k}};
      add(base, "trial", bp, {random, probe.stats_job});
      curve_needs.push_back(base);
      for (const auto& mode : modes) {
        const auto trial = m.id + "/trial/" + mode + "/" + std::to_string(k);
        auto tp = trial_params(pyramid, probe.stats_job, trainer, hp);
        tp["schedule"] = {{"mode", mode}, {"k", k}};
        add(trial, "trial", tp, {pyramid, probe.stats_job});
        points.push_back({{"k", k}, {"mode", mode}, {"trial", trial}, {"baseline", base}});
        curve_needs.push_back(trial);
      }
    }
    add(m.id + "/curve", "curve", Json{{"points", points}}, curve_needs);
  }

  std::string pool_ref(const ProbeInfo& probe) {
    const auto which = current_->params.value("pool", std::string("random"));
    if (which == "random") return probe.random_pool;
    const auto id = probe.id + "/pool/" + which;
    if (std::find(probe.pools.begin(), probe.pools.end(), id) == probe.pools.end()) {
      fail("probe '" + probe.id + "' has no pool '" + which + "'");
    }
    return id;
  }

  void sweep(const MacroJob& m) {
    const auto& probe = probe_ref();
    const auto pool = pool_ref(probe);
    const auto trainer = trainer_param();
    const auto hp = hyperparams();
    std::vector<Json> points;
    try {
      auto grid = expand_grid(m.params);
      for (auto& w : grid.warnings) plan_.warnings.push_back("job '" + m.id + "': " + w);
      points = std::move(grid.points);
    } catch (const InvalidArgument& e) {
      fail(e.what());
    }
    const auto baseline = static_cast<std::size_t>(int_param("baseline", 0, 0));
    if (baseline >= points.size()) fail("params.baseline is not a grid point index");
    Json trials = Json::array();
    std::vector<std::string> needs;
    for (std::size_t i = 0; i < points.size(); ++i) {
      Json merged = hp;
      merged.update(points[i]);
      const auto trial = m.id + "/trial/" + std::to_string(i);
      add(trial, "trial", trial_params(pool, probe.stats_job, trainer, merged), {pool, probe.stats_job});
      trials.push_back({{"job", trial}, {"point", points[i]}, {"index", i}});
      needs.push_back(trial);
    }
    add(m.id + "/rank", "sweep_rank", Json{{"trials", trials}, {"baseline", baseline}}, needs);
  }

  void iterate(const MacroJob& m) {
    const auto& probe = probe_ref();
    const auto iterations = int_param("iterations", 1);
    const auto trainer = trainer_param();
    const auto hp = hyperparams();
    if (iterations > 1) {
      const auto instance = reg_.trainers.create(trainer.at("factory").get<std::string>(), trainer.at("params"),
                                                 plan_.config_dir);
      if (!instance->supports_checkpoints()) {
        fail("trainer '" + trainer.at("name").get<std::string>() + "' has no checkpoint support for " +
             std::to_string(iterations) + " iterations");
      }
    }
    Json selects = Json::array();
    std::string prev_select;
    for (std::int64_t t = 1; t <= iterations; ++t) {
      const auto prefix = m.id + "/it" + std::to_string(t);
      Json trials = Json::array();
      std::vector<std::string> select_needs;
      auto add_trial = [&](const std::string& name, const std::string& pool, Json extra) {
        auto tp = trial_params(pool, probe.stats_job, trainer, hp);
        std::vector<std::string> needs{pool, probe.stats_job};
        if (!prev_select.empty()) {
          tp["checkpoint_job"] = prev_select;
          needs.push_back(prev_select);
        }
        const auto id = prefix + "/trial/" + name;
        add(id, "trial", tp, needs);
        extra["job"] = id;
        trials.push_back(extra);
        select_needs.push_back(id);
      };
      add_trial("random", probe.random_pool, Json{{"baseline", true}});
      for (const auto& label : probe.labels) {
        for (int b = 0; b < probe.splits; ++b) {
          add_trial(label + "/" + split_name(b, probe.splits), probe.pool_job(label, b), Json{{"op", label}, {"split", b}});
        }
      }
      const auto select = prefix + "/select";
      Json sp{{"trials", trials}, {"splits", probe.splits}, {"iteration", t}, {"last", t == iterations}};
      if (!prev_select.empty()) sp["previous_job"] = prev_select;
      if (!prev_select.empty()) select_needs.push_back(prev_select);
      add(select, "select", sp, select_needs);
      selects.push_back(select);
      prev_select = select;
    }
    std::vector<std::string> needs;
    for (const auto& s : selects) needs.push_back(s.get<std::string>());
    add(m.id + "/chain", "chain", Json{{"selects", selects}}, needs);
  }

  void cost(const MacroJob& m) {
    const auto& p = m.params;
    Json params = Json::object();
    for (const auto* key : {"T_full", "r", "M", "m", "epsilon", "a", "b", "alpha_per_sample", "unit"}) {
      if (p.contains(key)) params[key] = p.at(key);
    }
    for (const auto& [k, _] : p.items()) {
      if (!params.contains(k) && k != "from") fail("unknown cost parameter '" + k + "'");
    }
    try {
      CostParams cp;
      cp.t_full = p.value("T_full", 1.0);
      cp.r = p.value("r", 1.0);
      cp.M = p.value("M", std::uint64_t{1});
      cp.m = p.value("m", std::uint64_t{0});
      check_invariants(cp);
      HoeffdingParams hp{p.value("epsilon", 0.0), p.value("a", 0.0), p.value("b", 1.0)};
      check_invariants(hp);
    } catch (const Json::exception& e) {
      fail(std::string("cost parameters: ") + e.what());
    } catch (const InvalidArgument& e) {
      fail(e.what());
    }
    Json trials = Json::array();
    std::vector<std::string> needs;
    if (p.contains("from")) {
      for (const auto& src : p.at("from")) {
        const auto name = src.get<std::string>();
        auto it = atomic_of_.find(name);
        if (it == atomic_of_.end()) fail("params.from names '" + name + "', which is not declared before it");
        for (const auto& id : it->second) {
          if (plan_.find(id)->kind == "trial") {
            trials.push_back(id);
            needs.push_back(id);
          }
        }
      }
    }
    params["trials"] = trials;
    add(m.id, "cost", params, needs);
  }

  void diversity(const MacroJob& m) {
    const auto& probe = probe_ref();
    Json pools = Json::object();
    std::vector<std::string> needs{probe.stats_job};
    std::vector<std::string> names;
    if (m.params.contains("pools")) {
      for (const auto& p : m.params.at("pools")) names.push_back(p.get<std::string>());
    } else {
      names.push_back("random");
      for (const auto& l : probe.labels) {
        for (int b = 0; b < probe.splits; ++b) names.push_back(l + "/" + split_name(b, probe.splits));
      }
    }
    for (const auto& n : names) {
      const auto id = n == "random" ? probe.random_pool : probe.id + "/pool/" + n;
      if (std::find(probe.pools.begin(), probe.pools.end(), id) == probe.pools.end()) {
        fail("probe '" + probe.id + "' has no pool '" + n + "'");
      }
      pools[n] = id;
      needs.push_back(id);
    }
    const auto top_n = int_param("top_n", 0, 50);
    add(m.id, "diversity", Json{{"dataset_job", probe.stats_job}, {"pools", pools}, {"top_n", top_n}}, needs);
  }
};

}  // namespace

void expand_plan(WorkflowPlan& plan, const Registries& registries) {
  plan.jobs.clear();
  Expander(plan, registries).run();
}

}  // namespace dms
