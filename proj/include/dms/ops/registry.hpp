#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

// Per-sample statistic, a pure function of the sample and loaded assets.
using StatFn = std::function<double(const Sample&)>;

enum class ParamKind { integer, string, path };

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::string;
  bool required = false;
  Json default_value;
  std::int64_t min_integer = 0;
};

struct OpDescriptor {
  std::string op_name;
  std::string stat_name;
  StatInputs inputs = StatInputs::text;
  std::vector<ParamSpec> params;
  // Receives params with defaults filled in and paths resolved.
  std::function<StatFn(const Json& params)> build;
};

// A statistic to compute: a registered operator, or an external scorer when
// params carry a "command".
struct StatSpec {
  std::string op_name;
  std::string stat_name;  // empty: the operator's declared statistic
  Json params = Json::object();
};

void to_json(Json& j, const StatSpec& s);
void from_json(const Json& j, StatSpec& s);

class OpRegistry {
 public:
  // Registry pre-populated with the built-in text operators.
  static OpRegistry with_builtins();

  void add(OpDescriptor op);
  const OpDescriptor* find(std::string_view op_name) const;
  std::vector<std::string> names() const;

  // Checks params against the schema: unknown keys, types and required
  // keys. Returns params with defaults filled and relative path params
  // resolved against base_dir. Throws InvalidArgument.
  Json validate_params(const OpDescriptor& op, const Json& params,
                       const std::filesystem::path& base_dir = {}) const;

  // Statistic written by the spec (override, declared, or external).
  std::string stat_name(const StatSpec& spec) const;
  std::string stat_name(std::string_view op_name, const Json& params) const;

 private:
  std::map<std::string, OpDescriptor, std::less<>> ops_;
};

bool is_external(const StatSpec& spec);

}  // namespace dms
