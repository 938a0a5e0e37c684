#pragma once

#include <map>
#include <span>
#include <string>

#include "dms/core/types.hpp"

namespace dms {

// Where a scorer writes its {"id","score"} lines.
enum class ScorerOutput { stdout_stream, env_path };

// Environment variable naming the output file in env_path mode.
inline constexpr const char* kScorerOutputEnv = "SANDBOX_SCORER_OUTPUT";

struct ScorerConfig {
  std::string command;
  std::string stat_name;
  ScorerOutput output = ScorerOutput::stdout_stream;
  std::size_t batch_size = 0;  // 0: one batch
  std::size_t max_parallel = 1;
};

// Parses {"command", "output": "stdout"|"env", "batch_size", "max_parallel"}.
ScorerConfig scorer_config_from_params(const std::string& stat_name, const Json& params);

// Runs the scorer over the samples and returns one finite score per id.
// Throws ProcessFailure on nonzero exit and ProtocolError on missing,
// duplicate, unknown or non-finite scores.
std::map<std::string, double> external_score(std::span<const Sample> samples, const ScorerConfig& config);

}  // namespace dms
