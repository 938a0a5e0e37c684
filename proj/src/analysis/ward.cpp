#include "dms/analysis/ward.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "dms/core/error.hpp"

namespace dms {

std::vector<std::vector<std::size_t>> ClusterAssignment::groups() const {
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t i = 0; i < labels.size(); ++i) out[static_cast<std::size_t>(labels[i])].push_back(i);
  return out;
}

ClusterAssignment ward_cluster(std::size_t n, const std::vector<double>& dissimilarity, std::size_t k) {
  if (n == 0 || k < 1 || k > n) {
    throw InvalidArgument("cluster count " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  if (dissimilarity.size() != n * n) throw InvalidArgument("dissimilarity matrix must be n x n");
  std::vector<double> d2(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    if (!std::isfinite(dissimilarity[i])) throw InvalidArgument("dissimilarity matrix holds a non-finite value");
    d2[i] = dissimilarity[i] * dissimilarity[i];
  }
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> active(n, true);
  // owner[i]: representative (smallest member) of item i's cluster.
  std::vector<std::size_t> owner(n);
  for (std::size_t i = 0; i < n; ++i) owner[i] = i;

  ClusterAssignment out;
  out.k = k;
  std::vector<std::size_t> labels_at_k = owner;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0, bb = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (!active[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (active[b] && d2[a * n + b] < best) {
          best = d2[a * n + b];
          ba = a;
          bb = b;
        }
      }
    }
    const double na = static_cast<double>(size[ba]), nb = static_cast<double>(size[bb]);
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == ba || c == bb) continue;
      const double nc = static_cast<double>(size[c]);
      const double v = ((na + nc) * d2[ba * n + c] + (nb + nc) * d2[bb * n + c] - nc * best) / (na + nb + nc);
      d2[ba * n + c] = d2[c * n + ba] = std::max(v, 0.0);
    }
    active[bb] = false;
    size[ba] += size[bb];
    for (auto& o : owner) {
      if (o == bb) o = ba;
    }
    out.merges.push_back(Merge{ba, bb, std::sqrt(best), size[ba]});
    if (n - (step + 1) == k) labels_at_k = owner;
  }

  // Number clusters by their smallest member.
  std::vector<int> rank(n, -1);
  int next = 0;
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = rank[labels_at_k[i]];
    if (r < 0) r = next++;
    out.labels[i] = r;
  }
  return out;
}

ClusterAssignment ward_cluster_features(const std::vector<std::vector<double>>& rows, std::size_t k) {
  const std::size_t n = rows.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != rows.front().size()) throw InvalidArgument("feature rows differ in length");
    for (std::size_t j = i + 1; j < n; ++j) {
      double ss = 0.0;
      for (std::size_t f = 0; f < rows[i].size(); ++f) ss += (rows[i][f] - rows[j][f]) * (rows[i][f] - rows[j][f]);
      d[i * n + j] = d[j * n + i] = std::sqrt(ss);
    }
  }
  return ward_cluster(n, d, k);
}

ClusterAssignment ward_cluster_correlation(const CorrelationMatrix& matrix, std::size_t k) {
  const std::size_t n = matrix.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = i == j ? 0.0 : 1.0 - matrix.at(i, j);
  }
  return ward_cluster(n, d, k);
}

double ward_objective(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels) {
  if (rows.size() != labels.size()) throw InvalidArgument("one label per row required");
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < rows.size(); ++i) members[labels[i]].push_back(i);
  double total = 0.0;
  for (const auto& [_, idx] : members) {
    const std::size_t dim = rows[idx.front()].size();
    std::vector<double> centroid(dim, 0.0);
    for (auto i : idx) {
      for (std::size_t f = 0; f < dim; ++f) centroid[f] += rows[i][f];
    }
    for (auto& c : centroid) c /= static_cast<double>(idx.size());
    for (auto i : idx) {
      for (std::size_t f = 0; f < dim; ++f) total += (rows[i][f] - centroid[f]) * (rows[i][f] - centroid[f]);
    }
  }
  return total;
}

}  // namespace dms
