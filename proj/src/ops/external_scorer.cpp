#include "dms/ops/external_scorer.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/core/subprocess.hpp"

namespace dms {

ScorerConfig scorer_config_from_params(const std::string& stat_name, const Json& params) {
  ScorerConfig c;
  c.stat_name = stat_name;
  if (!params.contains("command") || !params.at("command").is_string()) {
    throw InvalidArgument("external scorer '" + stat_name + "' needs a command string");
  }
  c.command = params.at("command").get<std::string>();
  const auto out = params.value("output", std::string("stdout"));
  if (out == "stdout") {
    c.output = ScorerOutput::stdout_stream;
  } else if (out == "env") {
    c.output = ScorerOutput::env_path;
  } else {
    throw InvalidArgument("scorer output must be 'stdout' or 'env', got '" + out + "'");
  }
  c.batch_size = params.value("batch_size", std::size_t{0});
  c.max_parallel = std::max<std::size_t>(1, params.value("max_parallel", std::size_t{1}));
  return c;
}

namespace {

std::string batch_manifest(std::span<const Sample> batch) {
  std::string out;
  for (const auto& s : batch) {
    Json j{{"id", s.id}, {"text", s.text}};
    if (!s.media.empty()) j["media"] = s.media;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<std::pair<std::string, double>> parse_scores(const std::string& content,
                                                         const std::string& stat_name) {
  std::vector<std::pair<std::string, double>> out;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ProtocolError("scorer '" + stat_name + "' output line " + std::to_string(line_no) +
                          " is not JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("score") || !j.at("id").is_string()) {
      throw ProtocolError("scorer '" + stat_name + "' output line " + std::to_string(line_no) +
                          " lacks \"id\" or \"score\"");
    }
    const auto& sc = j.at("score");
    const double v = sc.is_number() ? sc.get<double>() : std::nan("");
    if (!std::isfinite(v)) {
      throw ProtocolError("scorer '" + stat_name + "' returned a non-finite score for id '" +
                          j.at("id").get<std::string>() + "'");
    }
    out.emplace_back(j.at("id").get<std::string>(), v);
  }
  return out;
}

std::vector<std::pair<std::string, double>> run_batch(std::span<const Sample> batch, const ScorerConfig& c) {
  TempDir dir("dms-scorer");
  const auto input = dir.path() / "input.jsonl";
  write_file_atomic(input, batch_manifest(batch));
  auto argv = shell_command(c.command);
  argv.push_back(input.string());
  std::map<std::string, std::string> env;
  const auto output = dir.path() / "scores.jsonl";
  if (c.output == ScorerOutput::env_path) env[kScorerOutputEnv] = output.string();
  auto result = run_process(argv, env, dir.path());
  if (result.exit_code != 0) {
    throw ProcessFailure("scorer '" + c.stat_name + "' failed", result.exit_code, result.stderr_tail());
  }
  if (c.output == ScorerOutput::stdout_stream) return parse_scores(result.stdout_text, c.stat_name);
  if (!fs::exists(output)) {
    throw ProtocolError("scorer '" + c.stat_name + "' wrote no output at $" + kScorerOutputEnv);
  }
  return parse_scores(read_file(output), c.stat_name);
}

}  // namespace

std::map<std::string, double> external_score(std::span<const Sample> samples, const ScorerConfig& config) {
  std::map<std::string, double> scores;
  if (samples.empty()) return scores;
  const std::size_t bs = config.batch_size == 0 ? samples.size() : config.batch_size;
  std::vector<std::span<const Sample>> batches;
  for (std::size_t i = 0; i < samples.size(); i += bs) {
    batches.push_back(samples.subspan(i, std::min(bs, samples.size() - i)));
  }

  std::vector<std::vector<std::pair<std::string, double>>> results(batches.size());
  std::vector<std::exception_ptr> errors(batches.size());
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t b;
      {
        std::lock_guard lock(mu);
        if (next == batches.size()) return;
        b = next++;
      }
      try {
        results[b] = run_batch(batches[b], config);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::min(config.max_parallel, batches.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::unordered_set<std::string> wanted;
  for (const auto& s : samples) wanted.insert(s.id);
  for (auto& batch : results) {
    for (auto& [id, v] : batch) {
      if (!wanted.count(id)) {
        throw ProtocolError("scorer '" + config.stat_name + "' returned unknown id '" + id + "'");
      }
      if (!scores.emplace(id, v).second) {
        throw ProtocolError("scorer '" + config.stat_name + "' returned id '" + id + "' twice");
      }
    }
  }
  for (const auto& s : samples) {
    if (!scores.count(s.id)) {
      throw ProtocolError("scorer '" + config.stat_name + "' omitted id '" + s.id + "'");
    }
  }
  return scores;
}

}  // namespace dms
