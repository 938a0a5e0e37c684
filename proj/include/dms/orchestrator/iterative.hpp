#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

// One round of iterative training: the recipe chosen by ranking, the
// checkpoint it started from and the one it produced. Checkpoint refs are
// paths relative to the workdir.
struct IterationStep {
  int iteration = 1;
  std::string recipe;  // selected pool, e.g. "text_length_filter/high"
  std::string trial_job;
  double improvement = 0.0;
  std::optional<std::string> checkpoint_in;
  std::optional<std::string> checkpoint_out;
};

struct IterationChain {
  std::vector<IterationStep> steps;
};

void to_json(Json& j, const IterationStep& s);
void from_json(const Json& j, IterationStep& s);
void to_json(Json& j, const IterationChain& c);
void from_json(const Json& j, IterationChain& c);

// Throws ProtocolError unless iterations count 1, 2, ... and each step
// starts from the previous step's checkpoint_out (the first from none).
// Every step but the last must produce a checkpoint.
void validate_chain(const IterationChain& chain);

}  // namespace dms
