#include "dms/cost/cost_model.hpp"

#include <algorithm>
#include <cmath>

namespace dms {

CostComparison breakeven(const CostParams& params) {
  check_invariants(params);
  const double factor = 1.0 + static_cast<double>(params.m) * params.r;
  CostComparison c;
  c.cost_without = static_cast<double>(params.M) * params.t_full;
  c.cost_with = factor * params.t_full;
  c.ratio = c.cost_with / c.cost_without;
  c.sandbox_preferred = factor <= static_cast<double>(params.M);
  return c;
}

double hoeffding_bound(const HoeffdingParams& params) {
  check_invariants(params);
  if (params.epsilon == 0.0) return 1.0;
  const double range = params.b - params.a;
  return std::min(1.0, std::exp(-2.0 * params.epsilon * params.epsilon / (range * range)));
}

double CostTotals::total(const std::string& unit) const {
  auto it = by_unit.find(unit);
  return it == by_unit.end() ? 0.0 : it->second;
}

CostTotals ledger_total(std::span<const CostLedgerEntry> entries) {
  CostTotals t;
  for (const auto& e : entries) {
    t.by_unit[e.unit] += e.total();
    t.samples_by_run[e.run_id] += e.trained_samples;
  }
  return t;
}

void to_json(Json& j, const CostLedgerEntry& e) {
  j = Json{{"run_id", e.run_id},
           {"trained_samples", e.trained_samples},
           {"per_sample_cost", e.per_sample_cost},
           {"unit", e.unit},
           {"total", e.total()}};
}

void from_json(const Json& j, CostLedgerEntry& e) {
  e.run_id = j.at("run_id").get<std::string>();
  e.trained_samples = j.at("trained_samples").get<std::uint64_t>();
  e.per_sample_cost = j.value("per_sample_cost", 1.0);
  e.unit = j.value("unit", std::string("alpha"));
}

Json cost_report(const CostParams& params, const HoeffdingParams& hoeffding) {
  const auto c = breakeven(params);
  return Json{{"cost_without", c.cost_without},
              {"cost_with", c.cost_with},
              {"ratio", c.ratio},
              {"preferred", c.sandbox_preferred},
              {"params", {{"T_full", params.t_full}, {"r", params.r}, {"M", params.M}, {"m", params.m}}},
              {"hoeffding",
               {{"epsilon", hoeffding.epsilon},
                {"range", Json::array({hoeffding.a, hoeffding.b})},
                {"bound", hoeffding_bound(hoeffding)}}}};
}

}  // namespace dms
