#pragma once

#include <map>
#include <span>
#include <string>

#include "dms/core/types.hpp"

namespace dms {

struct CostComparison {
  double cost_without = 0.0;  // M x T_full
  double cost_with = 0.0;     // (1 + m r) x T_full
  double ratio = 0.0;         // cost_with / cost_without
  bool sandbox_preferred = false;  // (1 + m r) <= M
};

// Throws InvalidArgument when the params break their invariants.
CostComparison breakeven(const CostParams& params);

// exp(-2 eps^2 / (b - a)^2), at most 1. Throws InvalidArgument for b == a
// with eps > 0.
double hoeffding_bound(const HoeffdingParams& params);

// One ledger line: trained samples at a per-sample cost, in a cost unit
// ("alpha" for the opaque FLOPs scale, "seconds" for wall time, ...).
struct CostLedgerEntry {
  std::string run_id;
  std::uint64_t trained_samples = 0;
  double per_sample_cost = 0.0;
  std::string unit = "alpha";

  double total() const noexcept { return per_sample_cost * static_cast<double>(trained_samples); }
};

struct CostTotals {
  std::map<std::string, double> by_unit;
  std::map<std::string, std::uint64_t> samples_by_run;

  double total(const std::string& unit = "alpha") const;
};

CostTotals ledger_total(std::span<const CostLedgerEntry> entries);

void to_json(Json& j, const CostLedgerEntry& e);
void from_json(const Json& j, CostLedgerEntry& e);

// {cost_without, cost_with, ratio, preferred, hoeffding:{epsilon, range, bound}}
Json cost_report(const CostParams& params, const HoeffdingParams& hoeffding);

}  // namespace dms
