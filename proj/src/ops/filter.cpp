#include "dms/ops/filter.hpp"

#include "dms/core/error.hpp"

namespace dms {

std::vector<std::size_t> keep_indices(const Dataset& dataset, const std::string& stat, const KeepRange& range) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& s = dataset.samples[i];
    auto it = s.stats.find(stat);
    if (it == s.stats.end()) {
      throw InvalidArgument("sample '" + s.id + "' has no statistic '" + stat + "'; compute stats first");
    }
    if (range.contains(it->second)) out.push_back(i);
  }
  return out;
}

DataPool apply_filter(const Dataset& dataset, const std::string& op_name, const std::string& stat,
                      const KeepRange& range, const Json& params) {
  DataPool pool;
  pool.pool_id = "filter/" + op_name;
  pool.split_label = SplitLabel::composed;
  pool.provenance.push_back(ProvenanceStep{op_name, range, params});
  pool.pyramid_level = 1;
  for (auto i : keep_indices(dataset, stat, range)) pool.sample_ids.push_back(dataset.samples[i].id);
  pool.declared_size = pool.sample_ids.size();
  return pool;
}

}  // namespace dms
