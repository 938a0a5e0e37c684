#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dms/core/types.hpp"
#include "dms/ops/mapper.hpp"
#include "dms/ops/registry.hpp"
#include "dms/orchestrator/hooks.hpp"
#include "dms/trainers/trainer.hpp"

namespace dms {

enum class Phase { probe, refine, execute, evaluate };

inline constexpr std::array<Phase, 4> kPhases{Phase::probe, Phase::refine, Phase::execute, Phase::evaluate};

std::string_view to_string(Phase p);
Phase phase_from_string(std::string_view s);

// A job as written in the config. Macro kinds (probe, correlate, recipes,
// compose, scale, sweep, iterate, cost, diversity) expand to atomic jobs.
struct MacroJob {
  std::string id;
  std::string kind;
  Json params = Json::object();
  std::vector<std::string> needs;
  std::vector<std::string> hooks;
  Phase phase = Phase::probe;
};

// A unit of execution with its own ledger entry and output directory.
struct AtomicJob {
  std::string id;
  std::string kind;
  Json params = Json::object();
  std::vector<std::string> needs;
  std::vector<std::string> hooks;
  Phase phase = Phase::probe;
  std::string macro_id;
};

struct TrainerEntry {
  std::string factory;
  Json params = Json::object();
};

// Capability factories and behaviors a workflow may reference by name.
struct Registries {
  OpRegistry ops = OpRegistry::with_builtins();
  MapperRegistry mappers = MapperRegistry::with_builtins();
  TrainerRegistry trainers = TrainerRegistry::with_builtins();
  HookRegistry hooks = HookRegistry::with_builtins();
};

struct WorkflowPlan {
  std::filesystem::path workdir;
  std::filesystem::path config_dir;
  std::uint64_t seed = 0;
  std::size_t max_parallel = 1;
  std::vector<std::string> hooks;  // applied to every job
  std::map<std::string, TrainerEntry> trainers;
  std::map<std::string, Json> scorers;
  std::array<std::vector<MacroJob>, 4> phases;
  // Expanded jobs in phase order; within a phase every job follows its needs.
  std::vector<AtomicJob> jobs;
  std::vector<std::string> warnings;

  const AtomicJob* find(std::string_view id) const;
  std::size_t count(std::string_view kind) const;
};

// Parses and fully resolves a workflow: unknown kinds, hooks, trainers,
// operators, duplicate ids, dangling needs and cycles are rejected here.
// Throws IoError when unreadable, ParseError (with line) on malformed YAML,
// ConfigError on schema violations.
WorkflowPlan load_workflow(const std::filesystem::path& config, const Registries& registries = {});
WorkflowPlan parse_workflow(std::string_view yaml, const std::filesystem::path& config_dir,
                            const Registries& registries = {});

// YAML scalars become numbers or booleans when they read as such, unless quoted.
Json yaml_to_json(std::string_view yaml);

}  // namespace dms
