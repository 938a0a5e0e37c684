#include "dms/analysis/improvement.hpp"

#include "dms/core/error.hpp"

namespace dms {

double relative_improvement(const MetricVector& s, const MetricVector& baseline, const MetricNormalizer& normalizer) {
  if (s.metrics.size() != baseline.metrics.size()) {
    throw InvalidArgument("metric sets differ in size");
  }
  double diff = 0.0;
  double base = 0.0;
  auto it = baseline.metrics.begin();
  for (const auto& [name, value] : s.metrics) {
    if (it->first != name) throw InvalidArgument("metric '" + name + "' has no baseline counterpart");
    const double v = normalizer ? normalizer(name, value) : value;
    const double b = normalizer ? normalizer(name, it->second) : it->second;
    diff += v - b;
    base += b;
    ++it;
  }
  if (base == 0.0) throw InvalidArgument("baseline scores sum to zero");
  return 100.0 * diff / base;
}

}  // namespace dms
