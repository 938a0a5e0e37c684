#pragma once

#include <string>
#include <vector>

#include "dms/analysis/improvement.hpp"
#include "dms/core/types.hpp"

namespace dms {

// Relative change (percent) of each split of one operator, lowest split
// first, with the best split and its value.
struct OpRankRow {
  std::string op_name;
  std::vector<double> changes;
  int best_split = 0;
  double best_value = 0.0;

  bool operator==(const OpRankRow&) const = default;
};

// Row with best split = argmax of changes; ties go to the lower split.
// Throws InvalidArgument when changes is empty or holds NaN.
OpRankRow make_rank_row(std::string op_name, std::vector<double> changes);

// Sorts rows by best value, descending, ties by op name. Best splits are
// recomputed from the changes. Throws InvalidArgument on an empty input.
std::vector<OpRankRow> rank_ops(std::vector<OpRankRow> rows);

struct TrialResult {
  std::string pool_id;
  std::string op_name;  // empty for the baseline
  int split = 0;
  MetricVector metrics;
  bool baseline = false;
};

// One row per operator with the relative improvement of each split over the
// single baseline trial. Splits without a trial are an error. Throws
// InvalidArgument unless exactly one baseline is present.
std::vector<OpRankRow> rows_from_trials(const std::vector<TrialResult>& trials, int splits,
                                        const MetricNormalizer& normalizer = {});

// "low", "mid", "high" for three splits, "b0".."b4" otherwise.
std::string split_name(int b, int k);

}  // namespace dms
