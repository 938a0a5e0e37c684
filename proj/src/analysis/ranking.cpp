#include "dms/analysis/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "dms/core/error.hpp"

namespace dms {

OpRankRow make_rank_row(std::string op_name, std::vector<double> changes) {
  if (changes.empty()) throw InvalidArgument("operator '" + op_name + "' has no split results");
  for (double c : changes) {
    if (std::isnan(c)) throw InvalidArgument("operator '" + op_name + "' has a NaN split result");
  }
  OpRankRow row;
  row.op_name = std::move(op_name);
  row.changes = std::move(changes);
  row.best_split = 0;
  for (std::size_t b = 1; b < row.changes.size(); ++b) {
    if (row.changes[b] > row.changes[static_cast<std::size_t>(row.best_split)]) row.best_split = static_cast<int>(b);
  }
  row.best_value = row.changes[static_cast<std::size_t>(row.best_split)];
  return row;
}

std::vector<OpRankRow> rank_ops(std::vector<OpRankRow> rows) {
  if (rows.empty()) throw InvalidArgument("nothing to rank");
  for (auto& r : rows) r = make_rank_row(std::move(r.op_name), std::move(r.changes));
  std::stable_sort(rows.begin(), rows.end(), [](const OpRankRow& a, const OpRankRow& b) {
    if (a.best_value != b.best_value) return a.best_value > b.best_value;
    return a.op_name < b.op_name;
  });
  return rows;
}

std::vector<OpRankRow> rows_from_trials(const std::vector<TrialResult>& trials, int splits,
                                        const MetricNormalizer& normalizer) {
  const TrialResult* baseline = nullptr;
  for (const auto& t : trials) {
    if (!t.baseline) continue;
    if (baseline) throw InvalidArgument("more than one baseline trial");
    baseline = &t;
  }
  if (!baseline) throw InvalidArgument("no baseline trial");
  std::map<std::string, std::vector<std::optional<double>>> table;
  for (const auto& t : trials) {
    if (t.baseline) continue;
    if (t.split < 0 || t.split >= splits) throw InvalidArgument("trial '" + t.pool_id + "' has split out of range");
    auto& row = table[t.op_name];
    row.resize(static_cast<std::size_t>(splits));
    row[static_cast<std::size_t>(t.split)] = relative_improvement(t.metrics, baseline->metrics, normalizer);
  }
  std::vector<OpRankRow> rows;
  for (const auto& [op, changes] : table) {
    std::vector<double> values;
    for (std::size_t b = 0; b < changes.size(); ++b) {
      if (!changes[b]) throw InvalidArgument("operator '" + op + "' lacks a trial for split " + split_name(static_cast<int>(b), splits));
      values.push_back(*changes[b]);
    }
    rows.push_back(make_rank_row(op, std::move(values)));
  }
  return rows;
}

std::string split_name(int b, int k) {
  if (k == 3) {
    static constexpr const char* names[] = {"low", "mid", "high"};
    return names[b];
  }
  return "b" + std::to_string(b);
}

}  // namespace dms
