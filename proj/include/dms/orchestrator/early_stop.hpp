#pragma once

#include <optional>
#include <string>

#include "dms/core/types.hpp"

namespace dms {

struct EarlyStopPolicy {
  double fraction = 0.5;  // in (0, 1]
  double margin = kInf;   // delta; inf never aborts
  // Metric compared against the baseline; empty uses the mean over metrics.
  std::string metric;
};

void to_json(Json& j, const EarlyStopPolicy& p);
// Throws ConfigError when fraction is outside (0, 1] or margin is NaN.
void from_json(const Json& j, EarlyStopPolicy& p);

enum class EarlyStopDecision { proceed, abort };

std::string_view to_string(EarlyStopDecision d);

// Abort iff partial < baseline - margin.
EarlyStopDecision early_stop_check(double partial, double baseline, const EarlyStopPolicy& policy);

// Scalar the policy compares: the named metric or the mean of all metrics.
// Throws InvalidArgument when the named metric is absent.
double policy_scalar(const MetricVector& mv, const EarlyStopPolicy& policy);

}  // namespace dms
