#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dms/analysis/pearson.hpp"
#include "dms/analysis/ranking.hpp"
#include "dms/analysis/ward.hpp"
#include "dms/core/types.hpp"

namespace dms {

// op,<split names...>,best_split,best_value; rows in the given order.
std::string ranking_csv(const std::vector<OpRankRow>& rows, int splits);

// Ranks the trials against their baseline and renders the CSV. Throws
// InvalidArgument when the baseline is missing.
std::string emit_ranking(const std::vector<TrialResult>& trials, int splits = 3);

// Reads a ranking CSV back into rows. Accepts the emitted form and plain
// op,<change per split...> tables.
std::vector<OpRankRow> parse_ranking_csv(std::string_view content);

// label,<labels...> then one row per label.
std::string correlation_csv(const CorrelationMatrix& matrix);

// item,cluster
std::string clusters_csv(const std::vector<std::string>& items, const ClusterAssignment& clusters);

struct CurvePoint {
  std::size_t k = 1;
  double improvement = 0.0;  // percent
};

// k,relative_improvement sorted by k. An empty input gives the header only.
std::string scaling_curve_csv(std::vector<CurvePoint> points);

// Relative improvement of each (k, metrics) run over the baseline.
std::string emit_scaling_curve(const std::vector<std::pair<std::size_t, MetricVector>>& runs,
                               const MetricVector& baseline);

}  // namespace dms
