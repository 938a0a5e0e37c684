#include "dms/analysis/pearson.hpp"

#include <algorithm>
#include <cmath>

#include "dms/core/error.hpp"

namespace dms {

namespace {

// Mean-centered copy and its Euclidean norm.
struct Centered {
  std::vector<double> v;
  double norm = 0.0;
};

Centered center(std::span<const double> x) {
  Centered c;
  c.v.assign(x.size(), 0.0);
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) return c;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    c.v[i] = x[i] - mean;
    ss += c.v[i] * c.v[i];
  }
  c.norm = std::sqrt(ss);
  return c;
}

double correlate(const Centered& a, const Centered& b) {
  if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) dot += a.v[i] * b.v[i];
  return std::clamp(dot / (a.norm * b.norm), -1.0, 1.0);
}

void check_shapes(const std::vector<Series>& series) {
  if (series.empty()) return;
  const auto n = series.front().values.size();
  if (n < 2) throw InvalidArgument("correlation needs at least 2 observations per series");
  for (const auto& s : series) {
    if (s.values.size() != n) {
      throw InvalidArgument("series '" + s.label + "' has " + std::to_string(s.values.size()) +
                            " observations, expected " + std::to_string(n));
    }
  }
}

CorrelationMatrix shell(const std::vector<Series>& series, const std::vector<Centered>& centered) {
  CorrelationMatrix m;
  const auto p = series.size();
  m.values.assign(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    m.labels.push_back(series[i].label);
    m.values[i * p + i] = 1.0;
    if (centered[i].norm == 0.0) m.constant_series.push_back(series[i].label);
  }
  return m;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("series lengths differ");
  if (x.size() < 2) throw InvalidArgument("correlation needs at least 2 observations");
  return correlate(center(x), center(y));
}

CorrelationMatrix pearson_matrix_serial(const std::vector<Series>& series) {
  check_shapes(series);
  std::vector<Centered> c;
  for (const auto& s : series) c.push_back(center(s.values));
  auto m = shell(series, c);
  const auto p = series.size();
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      m.values[i * p + j] = m.values[j * p + i] = correlate(c[i], c[j]);
    }
  }
  return m;
}

CorrelationMatrix pearson_matrix(const std::vector<Series>& series) {
  check_shapes(series);
  const auto p = static_cast<std::ptrdiff_t>(series.size());
  std::vector<Centered> c(series.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < p; ++i) {
    c[static_cast<std::size_t>(i)] = center(series[static_cast<std::size_t>(i)].values);
  }
  auto m = shell(series, c);
  const auto up = static_cast<std::size_t>(p);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t si = 0; si < p; ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t j = i + 1; j < up; ++j) {
      m.values[i * up + j] = m.values[j * up + i] = correlate(c[i], c[j]);
    }
  }
  return m;
}

CorrelationMatrix pearson_matrix(const std::map<std::string, std::vector<double>>& series) {
  std::vector<Series> v;
  for (const auto& [label, values] : series) v.push_back(Series{label, values});
  return pearson_matrix(v);
}

}  // namespace dms
