#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "dms/trainers/trainer.hpp"

namespace dms {

struct TrainerManifest {
  std::filesystem::path pool_manifest;
  std::filesystem::path dataset;
  Json hyperparams = Json::object();
  std::uint64_t seed = 0;
  std::optional<std::string> checkpoint_in;
  std::filesystem::path output;
};

void to_json(Json& j, const TrainerManifest& m);
void from_json(const Json& j, TrainerManifest& m);

// Writes the manifest next to its output, runs `command <manifest path>`,
// and parses the metrics JSON at manifest.output.
//
// Throws ProcessFailure (with stderr tail) on nonzero exit and
// ProtocolError when the metrics file is missing or malformed.
TrainResult external_train_eval(const TrainerManifest& manifest, const std::string& command,
                                const std::filesystem::path& scratch_dir);

class ExternalTrainer : public Trainer {
 public:
  ExternalTrainer(std::string command, bool checkpoints) : command_(std::move(command)), checkpoints_(checkpoints) {}
  std::string name() const override { return "external"; }
  TrainResult train_eval(const TrainRequest& request) override;
  bool supports_checkpoints() const override { return checkpoints_; }

 private:
  std::string command_;
  bool checkpoints_;
};

}  // namespace dms
