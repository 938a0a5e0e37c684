#pragma once

#include <string>
#include <vector>

#include "dms/analysis/pearson.hpp"

namespace dms {

// One agglomeration step. Clusters are named by their smallest member index.
struct Merge {
  std::size_t a = 0;  // a < b
  std::size_t b = 0;
  double height = 0.0;
  std::size_t size = 0;  // members after the merge
};

struct ClusterAssignment {
  std::size_t k = 0;
  // Cluster of each item; clusters are numbered by their smallest member.
  std::vector<int> labels;
  // Full merge history down to a single cluster.
  std::vector<Merge> merges;

  std::vector<std::vector<std::size_t>> groups() const;
};

// Ward linkage by Lance-Williams updates on squared dissimilarities. Among
// equal merge costs the pair with the smallest (a, b) wins. `dissimilarity`
// is a symmetric n x n row-major matrix. Throws InvalidArgument when k is
// outside [1, n] or the matrix is malformed.
ClusterAssignment ward_cluster(std::size_t n, const std::vector<double>& dissimilarity, std::size_t k);

// Euclidean distances between feature rows.
ClusterAssignment ward_cluster_features(const std::vector<std::vector<double>>& rows, std::size_t k);

// Dissimilarity 1 - r between correlated series.
ClusterAssignment ward_cluster_correlation(const CorrelationMatrix& matrix, std::size_t k);

// Sum over clusters of squared distances to the cluster centroid.
double ward_objective(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels);

}  // namespace dms
