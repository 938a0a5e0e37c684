#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

struct TrainRequest {
  const Dataset* dataset = nullptr;
  std::filesystem::path dataset_path;
  DataPool pool;
  std::filesystem::path pool_manifest_path;
  // Trained sample ids in order (a compute schedule); empty means the pool.
  std::vector<std::string> sample_stream;
  Json hyperparams = Json::object();
  std::uint64_t seed = 0;
  std::optional<std::string> checkpoint_in;
  // Scratch and output directory owned by this invocation.
  std::filesystem::path work_dir;
};

struct TrainResult {
  MetricVector metrics;
  std::optional<std::string> checkpoint_out;
};

// The reference-model capability: train on a pool, evaluate, report metrics.
class Trainer {
 public:
  virtual ~Trainer() = default;
  virtual std::string name() const = 0;
  virtual TrainResult train_eval(const TrainRequest& request) = 0;
  virtual bool supports_checkpoints() const { return false; }
  // Metrics after training on the given fraction of the samples, for
  // trainers that can report progress. nullopt otherwise.
  virtual std::optional<MetricVector> partial_eval(const TrainRequest&, double /*fraction*/) { return std::nullopt; }
};

// Builds a trainer from its config params; relative paths resolve against
// base_dir.
using TrainerFactory =
    std::function<std::unique_ptr<Trainer>(const Json& params, const std::filesystem::path& base_dir)>;

class TrainerRegistry {
 public:
  // "synthetic" and "external".
  static TrainerRegistry with_builtins();

  void add(const std::string& name, TrainerFactory factory);
  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;
  // Throws ConfigError for an unknown name.
  std::unique_ptr<Trainer> create(const std::string& name, const Json& params,
                                  const std::filesystem::path& base_dir = {}) const;

 private:
  std::map<std::string, TrainerFactory, std::less<>> factories_;
};

}  // namespace dms
