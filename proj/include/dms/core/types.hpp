#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace dms {

using Json = nlohmann::json;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One record of a corpus. Stats are stored inline, keyed by statistic name.
struct Sample {
  std::string id;
  std::string text;
  std::map<std::string, std::string> media;
  std::map<std::string, double> stats;

  bool operator==(const Sample&) const = default;
};

// Which sample fields a statistic was computed from.
enum class StatInputs : unsigned { none = 0, text = 1, media = 2, all = 3 };

constexpr StatInputs operator|(StatInputs a, StatInputs b) {
  return static_cast<StatInputs>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}
constexpr bool intersects(StatInputs a, StatInputs b) {
  return (static_cast<unsigned>(a) & static_cast<unsigned>(b)) != 0;
}

struct StatOrigin {
  std::string op_name;
  StatInputs inputs = StatInputs::all;

  bool operator==(const StatOrigin&) const = default;
};

struct Dataset {
  std::vector<Sample> samples;
  // Which operator wrote each statistic in this process. Not persisted in the
  // JSONL form; stats loaded from disk have no recorded origin.
  std::map<std::string, StatOrigin> stat_origin;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
};

using IdIndex = std::unordered_map<std::string, std::size_t>;

// Maps sample id to position. Throws InvalidArgument on duplicate ids.
IdIndex build_id_index(const Dataset& dataset);

// Closed interval [lo, hi] over a statistic value. Infinite endpoints allowed.
class KeepRange {
 public:
  KeepRange() : lo_(-kInf), hi_(kInf) {}
  // Throws InvalidArgument when lo > hi or either bound is NaN.
  static KeepRange make(double lo, double hi);
  static KeepRange all() { return KeepRange(-kInf, kInf); }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  bool contains(double v) const noexcept { return lo_ <= v && v <= hi_; }

  bool operator==(const KeepRange&) const = default;

 private:
  KeepRange(double lo, double hi) : lo_(lo), hi_(hi) {}
  double lo_;
  double hi_;
};

enum class SplitLabel { low, mid, high, random, composed, merged };

std::string_view to_string(SplitLabel label);
SplitLabel split_label_from_string(std::string_view s);

struct ProvenanceStep {
  std::string op_name;
  KeepRange keep_range = KeepRange::all();
  Json params = Json::object();

  bool operator==(const ProvenanceStep&) const = default;
};

struct DataPool {
  std::string pool_id;
  std::vector<std::string> sample_ids;
  std::vector<ProvenanceStep> provenance;
  SplitLabel split_label = SplitLabel::random;
  std::size_t declared_size = 0;
  std::optional<int> pyramid_level;
  // Bucket index for k-way splits (0 = lowest).
  std::optional<int> bucket;
  // Pool ids merged into this one, in merge order (merged pools only).
  std::vector<std::string> sources;

  std::size_t actual_size() const noexcept { return sample_ids.size(); }
  bool is_short() const noexcept { return sample_ids.size() < declared_size; }

  bool operator==(const DataPool&) const = default;
};

// Throws InvalidArgument when a DataPool invariant is broken.
void check_invariants(const DataPool& pool);

struct OperatorConfig {
  std::string op_name;
  Json params = Json::object();
  std::optional<KeepRange> keep_range;
  // Which split of the probe phase the range was taken from, when known.
  std::optional<int> split;

  bool operator==(const OperatorConfig&) const = default;
};

enum class RecipeOrigin { top_k, cluster_representative, manual };

std::string_view to_string(RecipeOrigin origin);
RecipeOrigin recipe_origin_from_string(std::string_view s);

struct Recipe {
  std::vector<OperatorConfig> ops;
  RecipeOrigin origin = RecipeOrigin::manual;

  bool operator==(const Recipe&) const = default;
};

// Throws InvalidArgument when the recipe is empty or repeats an operator.
void check_invariants(const Recipe& recipe);

struct MetricVector {
  std::map<std::string, double> metrics;
  std::uint64_t trained_samples = 0;
  double wall_time = 0.0;

  bool operator==(const MetricVector&) const = default;
};

// Throws InvalidArgument when the metric map is empty or holds a non-finite score.
void check_invariants(const MetricVector& mv);

struct CostParams {
  double t_full = 1.0;
  double r = 1.0;          // T_pool / T_full, in (0, 1]
  std::uint64_t M = 1;     // heuristic full-scale iterations
  std::uint64_t m = 0;     // planned small-pool experiments

  double t_pool() const noexcept { return r * t_full; }
};

void check_invariants(const CostParams& p);

struct HoeffdingParams {
  double epsilon = 0.0;
  double a = 0.0;
  double b = 1.0;
};

void check_invariants(const HoeffdingParams& p);

// JSON forms used by every file format in the sandbox.
void to_json(Json& j, const KeepRange& r);
void from_json(const Json& j, KeepRange& r);
void to_json(Json& j, const Sample& s);
void from_json(const Json& j, Sample& s);
void to_json(Json& j, const ProvenanceStep& p);
void from_json(const Json& j, ProvenanceStep& p);
void to_json(Json& j, const OperatorConfig& op);
void from_json(const Json& j, OperatorConfig& op);
void to_json(Json& j, const Recipe& r);
void from_json(const Json& j, Recipe& r);
void to_json(Json& j, const MetricVector& mv);
void from_json(const Json& j, MetricVector& mv);
void to_json(Json& j, const DataPool& p);
void from_json(const Json& j, DataPool& p);

// Infinite values are written as the strings "inf" / "-inf".
Json number_to_json(double v);
double number_from_json(const Json& j);

}  // namespace dms
