#include "dms/reports/reports.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "dms/analysis/improvement.hpp"
#include "dms/core/error.hpp"
#include "dms/reports/csv.hpp"

namespace dms {

std::string ranking_csv(const std::vector<OpRankRow>& rows, int splits) {
  std::vector<std::string> header{"op"};
  for (int b = 0; b < splits; ++b) header.push_back(split_name(b, splits));
  header.push_back("best_split");
  header.push_back("best_value");
  std::string out = csv::row(header);
  for (const auto& r : rows) {
    if (static_cast<int>(r.changes.size()) != splits) {
      throw InvalidArgument("row '" + r.op_name + "' does not have " + std::to_string(splits) + " splits");
    }
    std::vector<std::string> f{r.op_name};
    for (double c : r.changes) f.push_back(csv::format_number(c));
    f.push_back(split_name(r.best_split, splits));
    f.push_back(csv::format_number(r.best_value));
    out += csv::row(f);
  }
  return out;
}

std::string emit_ranking(const std::vector<TrialResult>& trials, int splits) {
  return ranking_csv(rank_ops(rows_from_trials(trials, splits)), splits);
}

namespace {

double parse_double(const std::string& s) {
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("not a number: '" + s + "'");
  return v;
}

}  // namespace

std::vector<OpRankRow> parse_ranking_csv(std::string_view content) {
  std::istringstream in{std::string(content)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("ranking CSV is empty");
  const auto header = csv::parse_row(line);
  const bool emitted = header.size() >= 4 && header[header.size() - 2] == "best_split" && header.back() == "best_value";
  const std::size_t splits = header.size() - (emitted ? 3 : 1);
  if (splits < 1) throw ParseError("ranking CSV header needs op plus at least one split column", 1);
  std::vector<OpRankRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = csv::parse_row(line);
    if (f.size() != header.size()) throw ParseError("wrong field count", line_no);
    std::vector<double> changes;
    for (std::size_t b = 0; b < splits; ++b) changes.push_back(parse_double(f[1 + b]));
    rows.push_back(make_rank_row(f[0], std::move(changes)));
  }
  return rows;
}

std::string correlation_csv(const CorrelationMatrix& matrix) {
  std::vector<std::string> header{"label"};
  header.insert(header.end(), matrix.labels.begin(), matrix.labels.end());
  std::string out = csv::row(header);
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    std::vector<std::string> f{matrix.labels[i]};
    for (std::size_t j = 0; j < matrix.size(); ++j) f.push_back(csv::format_number(matrix.at(i, j)));
    out += csv::row(f);
  }
  return out;
}

std::string clusters_csv(const std::vector<std::string>& items, const ClusterAssignment& clusters) {
  if (items.size() != clusters.labels.size()) throw InvalidArgument("one cluster label per item required");
  std::string out = csv::row({"item", "cluster"});
  for (std::size_t i = 0; i < items.size(); ++i) out += csv::row({items[i], std::to_string(clusters.labels[i])});
  return out;
}

std::string scaling_curve_csv(std::vector<CurvePoint> points) {
  std::stable_sort(points.begin(), points.end(), [](const CurvePoint& a, const CurvePoint& b) { return a.k < b.k; });
  std::string out = csv::row({"k", "relative_improvement"});
  for (const auto& p : points) out += csv::row({std::to_string(p.k), csv::format_number(p.improvement)});
  return out;
}

std::string emit_scaling_curve(const std::vector<std::pair<std::size_t, MetricVector>>& runs,
                               const MetricVector& baseline) {
  std::vector<CurvePoint> points;
  for (const auto& [k, mv] : runs) points.push_back(CurvePoint{k, relative_improvement(mv, baseline)});
  return scaling_curve_csv(std::move(points));
}

}  // namespace dms
