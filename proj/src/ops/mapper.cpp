#include "dms/ops/mapper.hpp"

#include "dms/core/error.hpp"
#include "dms/ops/text.hpp"

namespace dms {

MapperRegistry MapperRegistry::with_builtins() {
  MapperRegistry r;
  r.add({"identity", StatInputs::none, [](const Sample& s, const Json&) { return s; }});
  r.add({"lowercase_text", StatInputs::text, [](const Sample& s, const Json&) {
           Sample out = s;
           out.text = text::normalize_lower_utf8(s.text);
           return out;
         }});
  return r;
}

void MapperRegistry::add(MapperDescriptor mapper) {
  if (mapper.name.empty() || !mapper.fn) throw InvalidArgument("mapper needs a name and a function");
  auto name = mapper.name;
  mappers_.insert_or_assign(std::move(name), std::move(mapper));
}

const MapperDescriptor* MapperRegistry::find(std::string_view name) const {
  auto it = mappers_.find(name);
  return it == mappers_.end() ? nullptr : &it->second;
}

std::vector<std::string> MapperRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : mappers_) out.push_back(k);
  return out;
}

Dataset apply_mapper(const Dataset& dataset, const std::string& name, const Json& params,
                     const MapperRegistry& registry) {
  const auto* m = registry.find(name);
  if (!m) throw InvalidArgument("unknown mapper '" + name + "'");
  Dataset out;
  out.samples.reserve(dataset.size());
  if (m->modifies == StatInputs::none) {
    out.stat_origin = dataset.stat_origin;
    for (const auto& s : dataset.samples) out.samples.push_back(m->fn(s, params));
    return out;
  }
  auto stale = [&](const std::string& stat) {
    auto it = dataset.stat_origin.find(stat);
    return it == dataset.stat_origin.end() || intersects(it->second.inputs, m->modifies);
  };
  for (const auto& [stat, origin] : dataset.stat_origin) {
    if (!stale(stat)) out.stat_origin.emplace(stat, origin);
  }
  for (const auto& s : dataset.samples) {
    Sample t = m->fn(s, params);
    std::erase_if(t.stats, [&](const auto& kv) { return stale(kv.first); });
    out.samples.push_back(std::move(t));
  }
  return out;
}

}  // namespace dms
