#pragma once

#include <functional>
#include <string>

#include "dms/core/types.hpp"

namespace dms {

// Optional per-metric rescaling applied to both scores before summing.
using MetricNormalizer = std::function<double(const std::string& metric, double value)>;

// 100 * sum(s_i - s'_i) / sum(s'_i), in percent. Throws InvalidArgument when
// the metric names differ or the baseline sum is zero.
double relative_improvement(const MetricVector& s, const MetricVector& baseline,
                            const MetricNormalizer& normalizer = {});

}  // namespace dms
