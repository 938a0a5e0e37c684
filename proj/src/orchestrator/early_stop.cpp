#include "dms/orchestrator/early_stop.hpp"

#include <cmath>

#include "dms/core/error.hpp"

namespace dms {

void to_json(Json& j, const EarlyStopPolicy& p) {
  j = Json{{"fraction", p.fraction}, {"margin", number_to_json(p.margin)}};
  if (!p.metric.empty()) j["metric"] = p.metric;
}

void from_json(const Json& j, EarlyStopPolicy& p) {
  p = EarlyStopPolicy{};
  p.fraction = j.value("fraction", 0.5);
  if (j.contains("margin")) p.margin = number_from_json(j.at("margin"));
  p.metric = j.value("metric", std::string{});
  if (!(p.fraction > 0.0 && p.fraction <= 1.0)) throw ConfigError("early-stop fraction must lie in (0, 1]");
  if (std::isnan(p.margin)) throw ConfigError("early-stop margin must be a number");
}

std::string_view to_string(EarlyStopDecision d) { return d == EarlyStopDecision::abort ? "abort" : "continue"; }

EarlyStopDecision early_stop_check(double partial, double baseline, const EarlyStopPolicy& policy) {
  return partial < baseline - policy.margin ? EarlyStopDecision::abort : EarlyStopDecision::proceed;
}

double policy_scalar(const MetricVector& mv, const EarlyStopPolicy& policy) {
  if (!policy.metric.empty()) {
    auto it = mv.metrics.find(policy.metric);
    if (it == mv.metrics.end()) throw InvalidArgument("metric '" + policy.metric + "' not reported");
    return it->second;
  }
  if (mv.metrics.empty()) throw InvalidArgument("no metrics to compare");
  double sum = 0.0;
  for (const auto& [_, v] : mv.metrics) sum += v;
  return sum / static_cast<double>(mv.metrics.size());
}

}  // namespace dms
