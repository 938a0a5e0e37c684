#include "dms/orchestrator/workflow.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <set>

#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/orchestrator/expand.hpp"

namespace dms {

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::probe: return "probe";
    case Phase::refine: return "refine";
    case Phase::execute: return "execute";
    case Phase::evaluate: return "evaluate";
  }
  return "?";
}

Phase phase_from_string(std::string_view s) {
  for (auto p : kPhases) {
    if (to_string(p) == s) return p;
  }
  throw ConfigError("unknown phase '" + std::string(s) + "'");
}

const AtomicJob* WorkflowPlan::find(std::string_view id) const {
  for (const auto& j : jobs) {
    if (j.id == id) return &j;
  }
  return nullptr;
}

std::size_t WorkflowPlan::count(std::string_view kind) const {
  std::size_t n = 0;
  for (const auto& j : jobs) n += j.kind == kind ? 1 : 0;
  return n;
}

namespace {

Json scalar_to_json(const YAML::Node& node) {
  const auto& s = node.Scalar();
  if (node.Tag() == "!") return s;  // quoted
  if (s.empty() || s == "~" || s == "null" || s == "Null" || s == "NULL") return nullptr;
  if (s == "true" || s == "True" || s == "TRUE") return true;
  if (s == "false" || s == "False" || s == "FALSE") return false;
  if (s == ".inf" || s == "+.inf" || s == ".Inf") return "inf";
  if (s == "-.inf" || s == "-.Inf") return "-inf";
  const char* b = s.data();
  const char* e = s.data() + s.size();
  const char* start = (*b == '+') ? b + 1 : b;
  std::int64_t i = 0;
  if (auto [p, ec] = std::from_chars(start, e, i); ec == std::errc{} && p == e) return i;
  double d = 0.0;
  if (auto [p, ec] = std::from_chars(start, e, d); ec == std::errc{} && p == e) return d;
  return s;
}

Json node_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Scalar:
      return scalar_to_json(node);
    case YAML::NodeType::Sequence: {
      Json arr = Json::array();
      for (const auto& item : node) arr.push_back(node_to_json(item));
      return arr;
    }
    case YAML::NodeType::Map: {
      Json obj = Json::object();
      for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (obj.contains(key)) {
          throw ParseError("duplicate key '" + key + "'", static_cast<std::size_t>(kv.first.Mark().line) + 1);
        }
        obj[key] = node_to_json(kv.second);
      }
      return obj;
    }
  }
  return nullptr;
}

std::vector<std::string> string_list(const Json& j, const std::string& what) {
  std::vector<std::string> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw ConfigError(what + " must be a list");
  for (const auto& v : j) {
    if (!v.is_string()) throw ConfigError(what + " entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [k, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == k;
    if (!ok) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

}  // namespace

Json yaml_to_json(std::string_view yaml) {
  try {
    return node_to_json(YAML::Load(std::string(yaml)));
  } catch (const YAML::ParserException& e) {
    throw ParseError("workflow YAML: " + e.msg, static_cast<std::size_t>(e.mark.line) + 1);
  }
}

WorkflowPlan parse_workflow(std::string_view yaml, const std::filesystem::path& config_dir,
                            const Registries& registries) {
  const Json doc = yaml_to_json(yaml);
  if (doc.is_null()) throw ConfigError("workflow config is empty");
  if (!doc.is_object()) throw ConfigError("workflow config must be a mapping");
  check_keys(doc, {"workdir", "seed", "max_parallel", "registries", "phases"}, "workflow config");

  WorkflowPlan plan;
  plan.config_dir = config_dir;
  if (doc.contains("workdir") && doc.at("workdir").is_string()) {
    plan.workdir = config_dir / doc.at("workdir").get<std::string>();
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_integer() || doc.at("seed").get<std::int64_t>() < 0) {
      throw ConfigError("seed must be a non-negative integer");
    }
    plan.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("max_parallel")) {
    if (!doc.at("max_parallel").is_number_integer() || doc.at("max_parallel").get<std::int64_t>() < 1) {
      throw ConfigError("max_parallel must be a positive integer");
    }
    plan.max_parallel = doc.at("max_parallel").get<std::size_t>();
  }

  const Json regs = doc.value("registries", Json::object());
  if (!regs.is_object()) throw ConfigError("registries must be a mapping");
  check_keys(regs, {"hooks", "trainers", "scorers"}, "registries");
  plan.hooks = string_list(regs.value("hooks", Json()), "registries.hooks");
  for (const auto& h : plan.hooks) {
    if (!registries.hooks.contains(h)) throw ConfigError("unknown hook '" + h + "'");
  }
  if (regs.contains("trainers")) {
    if (!regs.at("trainers").is_object()) throw ConfigError("registries.trainers must be a mapping");
    for (const auto& [name, entry] : regs.at("trainers").items()) {
      if (!entry.is_object()) throw ConfigError("trainer '" + name + "' must be a mapping");
      check_keys(entry, {"factory", "params"}, "trainer '" + name + "'");
      TrainerEntry t;
      t.factory = entry.value("factory", std::string{});
      t.params = entry.value("params", Json::object());
      if (!registries.trainers.contains(t.factory)) {
        throw ConfigError("trainer '" + name + "' uses unknown factory '" + t.factory + "'");
      }
      // Constructing once validates the params at load time.
      try {
        (void)registries.trainers.create(t.factory, t.params, config_dir);
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw ConfigError("trainer '" + name + "': " + e.what());
      }
      plan.trainers.emplace(name, std::move(t));
    }
  }
  if (regs.contains("scorers")) {
    if (!regs.at("scorers").is_object()) throw ConfigError("registries.scorers must be a mapping");
    for (const auto& [name, entry] : regs.at("scorers").items()) {
      if (!entry.is_object() || !entry.contains("command")) {
        throw ConfigError("scorer '" + name + "' needs a command");
      }
      plan.scorers.emplace(name, entry);
    }
  }

  const Json phases = doc.value("phases", Json::object());
  if (!phases.is_object()) throw ConfigError("phases must be a mapping");
  check_keys(phases, {"probe", "refine", "execute", "evaluate"}, "phases");
  std::set<std::string> ids;
  for (auto phase : kPhases) {
    const Json list = phases.value(std::string(to_string(phase)), Json::array());
    if (list.is_null()) continue;
    if (!list.is_array()) throw ConfigError("phase '" + std::string(to_string(phase)) + "' must be a list");
    for (const auto& j : list) {
      if (!j.is_object()) throw ConfigError("jobs must be mappings");
      check_keys(j, {"id", "kind", "params", "needs", "hooks"}, "job");
      MacroJob m;
      m.phase = phase;
      m.id = j.value("id", std::string{});
      m.kind = j.value("kind", std::string{});
      if (m.id.empty()) throw ConfigError("job without an id");
      if (m.id.find('/') != std::string::npos) throw ConfigError("job id '" + m.id + "' must not contain '/'");
      if (m.kind.empty()) throw ConfigError("job '" + m.id + "' has no kind");
      if (!ids.insert(m.id).second) throw ConfigError("duplicate job id '" + m.id + "'");
      m.params = j.value("params", Json::object());
      if (m.params.is_null()) m.params = Json::object();
      if (!m.params.is_object()) throw ConfigError("params of job '" + m.id + "' must be a mapping");
      m.needs = string_list(j.value("needs", Json()), "needs of '" + m.id + "'");
      m.hooks = string_list(j.value("hooks", Json()), "hooks of '" + m.id + "'");
      for (const auto& h : m.hooks) {
        if (!registries.hooks.contains(h)) throw ConfigError("job '" + m.id + "' uses unknown hook '" + h + "'");
      }
      plan.phases[static_cast<std::size_t>(phase)].push_back(std::move(m));
    }
  }
  expand_plan(plan, registries);
  return plan;
}

WorkflowPlan load_workflow(const std::filesystem::path& config, const Registries& registries) {
  const auto text = read_file(config);
  auto dir = fs::absolute(config).parent_path();
  auto plan = parse_workflow(text, dir, registries);
  return plan;
}

}  // namespace dms
