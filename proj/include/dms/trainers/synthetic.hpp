#pragma once

#include <map>
#include <span>
#include <string>

#include "dms/trainers/trainer.hpp"

namespace dms {

// Reference model with a planted signal:
//   score_m = base_m + sum_s w_s (mean(stat_s) - c_s)
//           + log_scale_weight * ln(trained samples)
//           + checkpoint_gain * (chain iteration)
//           + sigma * N(seed, trained-set digest, metric, hyperparams)
struct PlantedSignalSpec {
  std::map<std::string, double> base;  // one entry per metric
  std::map<std::string, double> weights;
  std::map<std::string, double> centers;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  double log_scale_weight = 0.0;
  double checkpoint_gain = 0.0;
  bool checkpoints = true;
};

void to_json(Json& j, const PlantedSignalSpec& s);
void from_json(const Json& j, PlantedSignalSpec& s);

// Throws InvalidArgument when sigma is negative, a weight is not finite, the
// metric map is empty, or a weighted stat is missing on a trained sample.
MetricVector synthetic_train_eval(const Dataset& dataset, std::span<const std::string> sample_ids,
                                  const PlantedSignalSpec& spec, const Json& hyperparams = Json::object(),
                                  int chain_iteration = 0);

inline MetricVector synthetic_train_eval(const Dataset& dataset, const DataPool& pool,
                                         const PlantedSignalSpec& spec) {
  return synthetic_train_eval(dataset, pool.sample_ids, spec);
}

class SyntheticTrainer : public Trainer {
 public:
  explicit SyntheticTrainer(PlantedSignalSpec spec) : spec_(std::move(spec)) {}
  std::string name() const override { return "synthetic"; }
  TrainResult train_eval(const TrainRequest& request) override;
  bool supports_checkpoints() const override { return spec_.checkpoints; }
  // Scores a seeded subsample of the given fraction.
  std::optional<MetricVector> partial_eval(const TrainRequest& request, double fraction) override;

  const PlantedSignalSpec& spec() const noexcept { return spec_; }

 private:
  PlantedSignalSpec spec_;
};

}  // namespace dms
