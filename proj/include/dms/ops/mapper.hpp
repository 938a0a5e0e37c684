#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

struct MapperDescriptor {
  std::string name;
  // Sample fields the mapper may rewrite. Stats computed from these are
  // cleared after mapping.
  StatInputs modifies = StatInputs::none;
  std::function<Sample(const Sample&, const Json& params)> fn;
};

class MapperRegistry {
 public:
  // identity and lowercase_text.
  static MapperRegistry with_builtins();

  void add(MapperDescriptor mapper);
  const MapperDescriptor* find(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, MapperDescriptor, std::less<>> mappers_;
};

// Transforms every sample. Stats whose recorded inputs intersect the
// mapper's modified fields are cleared, as are stats of unknown origin.
// Throws InvalidArgument for an unregistered mapper.
Dataset apply_mapper(const Dataset& dataset, const std::string& name, const Json& params,
                     const MapperRegistry& registry);

}  // namespace dms
