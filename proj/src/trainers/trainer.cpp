#include "dms/trainers/trainer.hpp"

#include "dms/core/error.hpp"
#include "dms/trainers/external.hpp"
#include "dms/trainers/synthetic.hpp"

namespace dms {

TrainerRegistry TrainerRegistry::with_builtins() {
  TrainerRegistry r;
  r.add("synthetic", [](const Json& params, const std::filesystem::path&) -> std::unique_ptr<Trainer> {
    return std::make_unique<SyntheticTrainer>(params.get<PlantedSignalSpec>());
  });
  r.add("external", [](const Json& params, const std::filesystem::path& base_dir) -> std::unique_ptr<Trainer> {
    if (!params.contains("command") || !params.at("command").is_string()) {
      throw ConfigError("external trainer needs a \"command\" string");
    }
    std::string command = params.at("command").get<std::string>();
    // A leading relative script path resolves against the config directory.
    if (!base_dir.empty() && (command.rfind("./", 0) == 0 || command.rfind("../", 0) == 0)) {
      command = (base_dir / command).lexically_normal().string();
    }
    return std::make_unique<ExternalTrainer>(command, params.value("checkpoints", true));
  });
  return r;
}

void TrainerRegistry::add(const std::string& name, TrainerFactory factory) {
  factories_.insert_or_assign(name, std::move(factory));
}

bool TrainerRegistry::contains(std::string_view name) const { return factories_.find(name) != factories_.end(); }

std::vector<std::string> TrainerRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : factories_) out.push_back(k);
  return out;
}

std::unique_ptr<Trainer> TrainerRegistry::create(const std::string& name, const Json& params,
                                                 const std::filesystem::path& base_dir) const {
  auto it = factories_.find(name);
  if (it == factories_.end()) throw ConfigError("unknown trainer '" + name + "'");
  return it->second(params, base_dir);
}

}  // namespace dms
