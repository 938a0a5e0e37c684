#include "dms/trainers/external.hpp"

#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/core/subprocess.hpp"

namespace dms {

void to_json(Json& j, const TrainerManifest& m) {
  j = Json{{"pool_manifest", m.pool_manifest.string()},
           {"dataset", m.dataset.string()},
           {"hyperparams", m.hyperparams},
           {"seed", m.seed},
           {"output", m.output.string()}};
  if (m.checkpoint_in) j["checkpoint_in"] = *m.checkpoint_in;
}

void from_json(const Json& j, TrainerManifest& m) {
  m.pool_manifest = j.at("pool_manifest").get<std::string>();
  m.dataset = j.at("dataset").get<std::string>();
  m.hyperparams = j.value("hyperparams", Json::object());
  m.seed = j.value("seed", std::uint64_t{0});
  m.output = j.at("output").get<std::string>();
  m.checkpoint_in.reset();
  if (j.contains("checkpoint_in") && j.at("checkpoint_in").is_string()) {
    m.checkpoint_in = j.at("checkpoint_in").get<std::string>();
  }
}

TrainResult external_train_eval(const TrainerManifest& manifest, const std::string& command,
                                const std::filesystem::path& scratch_dir) {
  fs::create_directories(scratch_dir);
  const auto manifest_path = scratch_dir / "manifest.json";
  write_file_atomic(manifest_path, Json(manifest).dump(2) + "\n");
  std::error_code ec;
  fs::remove(manifest.output, ec);

  auto argv = shell_command(command);
  argv.push_back(manifest_path.string());
  const auto proc = run_process(argv, {}, scratch_dir);
  if (proc.exit_code != 0) throw ProcessFailure("trainer failed", proc.exit_code, proc.stderr_tail());

  if (!fs::exists(manifest.output)) {
    throw ProtocolError("trainer wrote no metrics file at " + manifest.output.string());
  }
  const auto doc = Json::parse(read_file(manifest.output), nullptr, false);
  if (doc.is_discarded()) throw ProtocolError("metrics file " + manifest.output.string() + " is not valid JSON");
  TrainResult result;
  result.metrics = doc.get<MetricVector>();
  if (auto it = doc.find("checkpoint_out"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) throw ProtocolError("checkpoint_out must be a path string");
    result.checkpoint_out = it->get<std::string>();
  }
  return result;
}

TrainResult ExternalTrainer::train_eval(const TrainRequest& request) {
  if (request.pool_manifest_path.empty() || request.dataset_path.empty()) {
    throw InvalidArgument("external trainer needs the pool manifest and dataset on disk");
  }
  TrainerManifest m;
  m.pool_manifest = fs::absolute(request.pool_manifest_path);
  m.dataset = fs::absolute(request.dataset_path);
  m.hyperparams = request.hyperparams;
  m.seed = request.seed;
  m.checkpoint_in = request.checkpoint_in;
  m.output = fs::absolute(request.work_dir / "metrics.json");
  return external_train_eval(m, command_, request.work_dir);
}

}  // namespace dms
