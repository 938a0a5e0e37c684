#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace dms {

struct Series {
  std::string label;
  std::vector<double> values;
};

// Symmetric Pearson matrix with a unit diagonal. A constant series has no
// defined correlation; its off-diagonal entries are 0 and its label is listed
// in constant_series.
struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<double> values;  // row-major, labels.size() squared
  std::vector<std::string> constant_series;

  std::size_t size() const noexcept { return labels.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * labels.size() + j]; }
};

// Pearson r of two equal-length series (0 when either is constant).
double pearson(std::span<const double> x, std::span<const double> y);

// Throws InvalidArgument on fewer than 2 observations or unequal lengths.
// The OpenMP version parallelizes over pairs and matches the serial
// reference bit for bit.
CorrelationMatrix pearson_matrix(const std::vector<Series>& series);
CorrelationMatrix pearson_matrix_serial(const std::vector<Series>& series);
CorrelationMatrix pearson_matrix(const std::map<std::string, std::vector<double>>& series);

}  // namespace dms
