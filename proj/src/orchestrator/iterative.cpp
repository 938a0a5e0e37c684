#include "dms/orchestrator/iterative.hpp"

#include "dms/core/error.hpp"

namespace dms {

void to_json(Json& j, const IterationStep& s) {
  j = Json{{"iteration", s.iteration},
           {"recipe", s.recipe},
           {"trial_job", s.trial_job},
           {"improvement", number_to_json(s.improvement)},
           {"checkpoint_in", s.checkpoint_in ? Json(*s.checkpoint_in) : Json(nullptr)},
           {"checkpoint_out", s.checkpoint_out ? Json(*s.checkpoint_out) : Json(nullptr)}};
}

void from_json(const Json& j, IterationStep& s) {
  s.iteration = j.at("iteration").get<int>();
  s.recipe = j.at("recipe").get<std::string>();
  s.trial_job = j.value("trial_job", std::string{});
  s.improvement = number_from_json(j.at("improvement"));
  auto opt = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<std::string>();
  };
  s.checkpoint_in = opt("checkpoint_in");
  s.checkpoint_out = opt("checkpoint_out");
}

void to_json(Json& j, const IterationChain& c) { j = Json{{"steps", c.steps}}; }

void from_json(const Json& j, IterationChain& c) { c.steps = j.at("steps").get<std::vector<IterationStep>>(); }

void validate_chain(const IterationChain& chain) {
  if (chain.steps.empty()) throw ProtocolError("chain error: no iterations");
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const auto& s = chain.steps[i];
    const auto where = "chain error at iteration " + std::to_string(i + 1) + ": ";
    if (s.iteration != static_cast<int>(i) + 1) throw ProtocolError(where + "iterations are out of order");
    if (i == 0) {
      if (s.checkpoint_in) throw ProtocolError(where + "the first iteration has no checkpoint to start from");
      continue;
    }
    const auto& prev = chain.steps[i - 1];
    if (!prev.checkpoint_out) throw ProtocolError(where + "iteration " + std::to_string(i) + " left no checkpoint");
    if (s.checkpoint_in != prev.checkpoint_out) {
      throw ProtocolError(where + "checkpoint_in does not match the previous checkpoint_out");
    }
  }
}

}  // namespace dms
