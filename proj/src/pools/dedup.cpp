#include "dms/pools/dedup.hpp"

#include <algorithm>
#include <unordered_set>

#include "dms/core/error.hpp"
#include "dms/ops/text.hpp"

namespace dms {

std::string dedup_key(const Sample& sample) {
  std::string key = text::nfc(sample.text);
  std::vector<std::string> paths;
  for (const auto& [_, path] : sample.media) paths.push_back(path);
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    key += '\0';
    key += p;
  }
  return key;
}

DataPool dedup_exact(const Dataset& dataset, const std::vector<DataPool>& pools, const std::string& pool_id) {
  const auto index = build_id_index(dataset);
  DataPool merged;
  merged.pool_id = pool_id;
  merged.split_label = SplitLabel::merged;
  std::unordered_set<std::string> seen;
  for (std::size_t p = 0; p < pools.size(); ++p) {
    const auto& pool = pools[p];
    merged.sources.push_back(pool.pool_id);
    if (p == 0) {
      merged.provenance = pool.provenance;
    } else {
      std::erase_if(merged.provenance, [&](const ProvenanceStep& step) {
        return std::find(pool.provenance.begin(), pool.provenance.end(), step) == pool.provenance.end();
      });
    }
    for (const auto& id : pool.sample_ids) {
      auto it = index.find(id);
      if (it == index.end()) throw InvalidArgument("pool '" + pool.pool_id + "' names unknown sample '" + id + "'");
      if (seen.insert(dedup_key(dataset.samples[it->second])).second) merged.sample_ids.push_back(id);
    }
  }
  merged.declared_size = merged.sample_ids.size();
  return merged;
}

}  // namespace dms
