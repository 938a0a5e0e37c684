#include "dms/trainers/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "dms/core/digest.hpp"
#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/core/rng.hpp"

namespace dms {

void to_json(Json& j, const PlantedSignalSpec& s) {
  j = Json{{"base", s.base},
           {"weights", s.weights},
           {"centers", s.centers},
           {"sigma", s.sigma},
           {"seed", s.seed},
           {"log_scale_weight", s.log_scale_weight},
           {"checkpoint_gain", s.checkpoint_gain},
           {"checkpoints", s.checkpoints}};
}

void from_json(const Json& j, PlantedSignalSpec& s) {
  s = PlantedSignalSpec{};
  if (j.contains("base")) {
    if (j.at("base").is_number()) {
      s.base["score"] = j.at("base").get<double>();
    } else {
      s.base = j.at("base").get<std::map<std::string, double>>();
    }
  } else {
    s.base["score"] = 0.0;
  }
  s.weights = j.value("weights", std::map<std::string, double>{});
  s.centers = j.value("centers", std::map<std::string, double>{});
  s.sigma = j.value("sigma", 0.0);
  s.seed = j.value("seed", std::uint64_t{0});
  s.log_scale_weight = j.value("log_scale_weight", 0.0);
  s.checkpoint_gain = j.value("checkpoint_gain", 0.0);
  s.checkpoints = j.value("checkpoints", true);
}

namespace {

void check_spec(const PlantedSignalSpec& spec) {
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) throw InvalidArgument("sigma must be finite and >= 0");
  if (spec.base.empty()) throw InvalidArgument("planted signal needs at least one metric");
  for (const auto& [stat, w] : spec.weights) {
    if (!std::isfinite(w)) throw InvalidArgument("weight of '" + stat + "' is not finite");
  }
}

}  // namespace

MetricVector synthetic_train_eval(const Dataset& dataset, std::span<const std::string> sample_ids,
                                  const PlantedSignalSpec& spec, const Json& hyperparams, int chain_iteration) {
  check_spec(spec);
  const auto index = build_id_index(dataset);
  // Sums run in sorted-id order so the score ignores sample order.
  std::vector<std::size_t> rows;
  rows.reserve(sample_ids.size());
  for (const auto& id : sample_ids) {
    auto it = index.find(id);
    if (it == index.end()) throw InvalidArgument("pool names unknown sample '" + id + "'");
    rows.push_back(it->second);
  }
  std::sort(rows.begin(), rows.end(),
            [&](std::size_t a, std::size_t b) { return dataset.samples[a].id < dataset.samples[b].id; });

  double signal = 0.0;
  for (const auto& [stat, w] : spec.weights) {
    if (w == 0.0) continue;
    double sum = 0.0;
    for (auto r : rows) {
      const auto& s = dataset.samples[r];
      auto it = s.stats.find(stat);
      if (it == s.stats.end()) throw InvalidArgument("sample '" + s.id + "' lacks weighted statistic '" + stat + "'");
      sum += it->second;
    }
    const double mean = rows.empty() ? 0.0 : sum / static_cast<double>(rows.size());
    auto c = spec.centers.find(stat);
    signal += w * (mean - (c == spec.centers.end() ? 0.0 : c->second));
  }
  if (spec.log_scale_weight != 0.0 && !rows.empty()) {
    signal += spec.log_scale_weight * std::log(static_cast<double>(rows.size()));
  }
  signal += spec.checkpoint_gain * chain_iteration;

  std::vector<std::string> ids(sample_ids.begin(), sample_ids.end());
  const auto digest = pool_content_digest(ids);
  const auto hp = sha256_hex(hyperparams.dump());
  MetricVector mv;
  for (const auto& [metric, base] : spec.base) {
    double noise = 0.0;
    if (spec.sigma > 0.0) {
      Rng rng(derive_seed(spec.seed, {"noise", digest, metric, hp}));
      noise = spec.sigma * rng.normal();
    }
    mv.metrics[metric] = base + signal + noise;
  }
  mv.trained_samples = rows.size();
  return mv;
}

namespace {

int chain_iteration(const TrainRequest& request) {
  if (!request.checkpoint_in) return 0;
  const auto doc = Json::parse(read_file(*request.checkpoint_in), nullptr, false);
  if (doc.is_discarded() || !doc.contains("iteration")) {
    throw ProtocolError("checkpoint '" + *request.checkpoint_in + "' is not a synthetic checkpoint");
  }
  return doc.at("iteration").get<int>();
}

const std::vector<std::string>& trained_ids(const TrainRequest& request) {
  return request.sample_stream.empty() ? request.pool.sample_ids : request.sample_stream;
}

}  // namespace

TrainResult SyntheticTrainer::train_eval(const TrainRequest& request) {
  if (!request.dataset) throw InvalidArgument("synthetic trainer needs the dataset in memory");
  const int iteration = chain_iteration(request) + 1;
  TrainResult result;
  result.metrics = synthetic_train_eval(*request.dataset, trained_ids(request), spec_, request.hyperparams,
                                        iteration - 1);
  if (spec_.checkpoints && !request.work_dir.empty()) {
    const auto path = request.work_dir / "checkpoint.json";
    Json ckpt{{"iteration", iteration}, {"pool_id", request.pool.pool_id}, {"metrics", result.metrics.metrics}};
    write_file_atomic(path, ckpt.dump(2) + "\n");
    result.checkpoint_out = path.string();
  }
  return result;
}

std::optional<MetricVector> SyntheticTrainer::partial_eval(const TrainRequest& request, double fraction) {
  if (!request.dataset) throw InvalidArgument("synthetic trainer needs the dataset in memory");
  if (!(fraction > 0.0 && fraction <= 1.0)) throw InvalidArgument("checkpoint fraction must lie in (0, 1]");
  const auto& ids = trained_ids(request);
  auto n = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(ids.size())));
  n = std::min(n, ids.size());
  std::vector<std::string> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  Rng rng(derive_seed(spec_.seed, {"partial", pool_content_digest(sorted)}));
  std::vector<std::string> subset;
  for (auto i : sample_indices(sorted.size(), n, rng)) subset.push_back(sorted[i]);
  return synthetic_train_eval(*request.dataset, subset, spec_, request.hyperparams, chain_iteration(request));
}

}  // namespace dms
