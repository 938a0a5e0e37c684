#include "dms/core/types.hpp"

#include <cmath>
#include <set>

#include "dms/core/error.hpp"

namespace dms {

IdIndex build_id_index(const Dataset& dataset) {
  IdIndex index;
  index.reserve(dataset.samples.size());
  for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
    auto [it, inserted] = index.emplace(dataset.samples[i].id, i);
    if (!inserted) throw InvalidArgument("duplicate sample id '" + dataset.samples[i].id + "'");
  }
  return index;
}

KeepRange KeepRange::make(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi)) throw InvalidArgument("keep range bound is NaN");
  if (lo > hi) {
    throw InvalidArgument("keep range lo > hi: [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  }
  return KeepRange(lo, hi);
}

std::string_view to_string(SplitLabel label) {
  switch (label) {
    case SplitLabel::low: return "low";
    case SplitLabel::mid: return "mid";
    case SplitLabel::high: return "high";
    case SplitLabel::random: return "random";
    case SplitLabel::composed: return "composed";
    case SplitLabel::merged: return "merged";
  }
  return "?";
}

SplitLabel split_label_from_string(std::string_view s) {
  if (s == "low") return SplitLabel::low;
  if (s == "mid") return SplitLabel::mid;
  if (s == "high") return SplitLabel::high;
  if (s == "random") return SplitLabel::random;
  if (s == "composed") return SplitLabel::composed;
  if (s == "merged") return SplitLabel::merged;
  throw ParseError("unknown split label '" + std::string(s) + "'");
}

void check_invariants(const DataPool& pool) {
  std::set<std::string_view> seen;
  for (const auto& id : pool.sample_ids) {
    if (!seen.insert(id).second) {
      throw InvalidArgument("pool '" + pool.pool_id + "' repeats sample id '" + id + "'");
    }
  }
  // Merged pools carry the intersection of their sources' provenance, which
  // may legitimately be empty.
  if (pool.split_label != SplitLabel::merged &&
      pool.provenance.empty() != (pool.split_label == SplitLabel::random)) {
    throw InvalidArgument("pool '" + pool.pool_id +
                          "': provenance must be empty iff split label is random");
  }
  if (pool.split_label == SplitLabel::composed &&
      pool.pyramid_level != static_cast<int>(pool.provenance.size())) {
    throw InvalidArgument("pool '" + pool.pool_id +
                          "': pyramid level must equal provenance length");
  }
}

std::string_view to_string(RecipeOrigin origin) {
  switch (origin) {
    case RecipeOrigin::top_k: return "top-k";
    case RecipeOrigin::cluster_representative: return "cluster-representative";
    case RecipeOrigin::manual: return "manual";
  }
  return "?";
}

RecipeOrigin recipe_origin_from_string(std::string_view s) {
  if (s == "top-k") return RecipeOrigin::top_k;
  if (s == "cluster-representative") return RecipeOrigin::cluster_representative;
  if (s == "manual") return RecipeOrigin::manual;
  throw ParseError("unknown recipe origin '" + std::string(s) + "'");
}

void check_invariants(const Recipe& recipe) {
  if (recipe.ops.empty()) throw InvalidArgument("recipe has no operators");
  std::set<std::string_view> names;
  for (const auto& op : recipe.ops) {
    if (!names.insert(op.op_name).second) {
      throw InvalidArgument("recipe repeats operator '" + op.op_name + "'");
    }
  }
}

void check_invariants(const MetricVector& mv) {
  if (mv.metrics.empty()) throw InvalidArgument("metric vector is empty");
  for (const auto& [name, v] : mv.metrics) {
    if (!std::isfinite(v)) throw InvalidArgument("metric '" + name + "' is not finite");
  }
}

void check_invariants(const CostParams& p) {
  if (!(p.t_full > 0.0) || !std::isfinite(p.t_full)) throw InvalidArgument("T_full must be positive");
  if (!(p.r > 0.0 && p.r <= 1.0)) throw InvalidArgument("r must lie in (0, 1]");
  if (p.M < 1) throw InvalidArgument("M must be >= 1");
}

void check_invariants(const HoeffdingParams& p) {
  if (!(p.epsilon >= 0.0) || !std::isfinite(p.epsilon)) throw InvalidArgument("epsilon must be >= 0");
  if (!std::isfinite(p.a) || !std::isfinite(p.b)) throw InvalidArgument("range bounds must be finite");
  if (p.a > p.b) throw InvalidArgument("range requires a <= b");
  if (p.a == p.b && p.epsilon > 0.0) {
    throw InvalidArgument("bound degenerates for b == a with epsilon > 0");
  }
}

Json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_null()) return std::nan("");
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf" || s == "Infinity") return kInf;
    if (s == "-inf" || s == "-Infinity") return -kInf;
    if (s == "nan" || s == "NaN") return std::nan("");
  }
  throw ParseError("expected a number, got " + j.dump());
}

void to_json(Json& j, const KeepRange& r) {
  j = Json::array({number_to_json(r.lo()), number_to_json(r.hi())});
}

void from_json(const Json& j, KeepRange& r) {
  if (!j.is_array() || j.size() != 2) throw ParseError("keep_range must be [lo, hi]");
  r = KeepRange::make(number_from_json(j[0]), number_from_json(j[1]));
}

void to_json(Json& j, const Sample& s) {
  j = Json{{"id", s.id}, {"text", s.text}};
  if (!s.media.empty()) j["media"] = s.media;
  if (!s.stats.empty()) {
    Json stats = Json::object();
    for (const auto& [k, v] : s.stats) stats[k] = number_to_json(v);
    j["stats"] = std::move(stats);
  }
}

void from_json(const Json& j, Sample& s) {
  if (!j.is_object()) throw ParseError("sample must be a JSON object");
  s = Sample{};
  if (auto it = j.find("id"); it != j.end() && !it->is_null()) {
    s.id = it->is_string() ? it->get<std::string>() : it->dump();
  }
  if (auto it = j.find("text"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("sample text must be a string");
    s.text = it->get<std::string>();
  }
  if (auto it = j.find("media"); it != j.end() && !it->is_null()) {
    s.media = it->get<std::map<std::string, std::string>>();
  }
  if (auto it = j.find("stats"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw ParseError("sample stats must be an object");
    for (const auto& [k, v] : it->items()) s.stats[k] = number_from_json(v);
  }
}

void to_json(Json& j, const ProvenanceStep& p) {
  j = Json{{"op_name", p.op_name}, {"keep_range", p.keep_range}, {"params", p.params}};
}

void from_json(const Json& j, ProvenanceStep& p) {
  p.op_name = j.at("op_name").get<std::string>();
  p.keep_range = j.at("keep_range").get<KeepRange>();
  p.params = j.value("params", Json::object());
}

void to_json(Json& j, const OperatorConfig& op) {
  j = Json{{"op_name", op.op_name}, {"params", op.params}};
  if (op.keep_range) j["keep_range"] = *op.keep_range;
  if (op.split) j["split"] = *op.split;
}

void from_json(const Json& j, OperatorConfig& op) {
  op = OperatorConfig{};
  op.op_name = j.at("op_name").get<std::string>();
  op.params = j.value("params", Json::object());
  if (auto it = j.find("keep_range"); it != j.end() && !it->is_null()) {
    op.keep_range = it->get<KeepRange>();
  }
  if (auto it = j.find("split"); it != j.end() && !it->is_null()) op.split = it->get<int>();
}

void to_json(Json& j, const Recipe& r) {
  j = Json{{"origin_strategy", std::string(to_string(r.origin))}, {"ops", r.ops}};
}

void from_json(const Json& j, Recipe& r) {
  r.origin = recipe_origin_from_string(j.value("origin_strategy", std::string("manual")));
  r.ops = j.at("ops").get<std::vector<OperatorConfig>>();
}

void to_json(Json& j, const MetricVector& mv) {
  j = Json{{"metrics", mv.metrics},
           {"trained_samples", mv.trained_samples},
           {"wall_time_s", mv.wall_time}};
}

void from_json(const Json& j, MetricVector& mv) {
  if (!j.is_object()) throw ProtocolError("metrics document must be a JSON object");
  auto it = j.find("metrics");
  if (it == j.end() || !it->is_object()) throw ProtocolError("metrics document lacks a \"metrics\" object");
  mv = MetricVector{};
  for (const auto& [name, v] : it->items()) {
    if (!v.is_number()) throw ProtocolError("metric '" + name + "' is not a finite number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw ProtocolError("metric '" + name + "' is not finite");
    mv.metrics[name] = d;
  }
  if (mv.metrics.empty()) throw ProtocolError("metrics object is empty");
  if (auto t = j.find("trained_samples"); t != j.end()) {
    if (!t->is_number_integer() && !t->is_number_unsigned()) {
      throw ProtocolError("trained_samples must be an integer");
    }
    auto n = t->get<std::int64_t>();
    if (n < 0) throw ProtocolError("trained_samples must be non-negative");
    mv.trained_samples = static_cast<std::uint64_t>(n);
  }
  if (auto w = j.find("wall_time_s"); w != j.end()) {
    if (!w->is_number()) throw ProtocolError("wall_time_s must be a number");
    mv.wall_time = w->get<double>();
  }
}

void to_json(Json& j, const DataPool& p) {
  j = Json{{"pool_id", p.pool_id},
           {"split_label", std::string(to_string(p.split_label))},
           {"provenance", p.provenance},
           {"declared_size", p.declared_size},
           {"actual_size", p.sample_ids.size()}};
  if (p.pyramid_level) j["pyramid_level"] = *p.pyramid_level;
  if (p.bucket) j["bucket"] = *p.bucket;
  if (!p.sources.empty()) j["sources"] = p.sources;
}

void from_json(const Json& j, DataPool& p) {
  p = DataPool{};
  p.pool_id = j.at("pool_id").get<std::string>();
  p.split_label = split_label_from_string(j.at("split_label").get<std::string>());
  p.provenance = j.value("provenance", std::vector<ProvenanceStep>{});
  p.declared_size = j.value("declared_size", std::size_t{0});
  if (auto it = j.find("pyramid_level"); it != j.end()) p.pyramid_level = it->get<int>();
  if (auto it = j.find("bucket"); it != j.end()) p.bucket = it->get<int>();
  p.sources = j.value("sources", std::vector<std::string>{});
  if (auto it = j.find("sample_ids"); it != j.end()) {
    p.sample_ids = it->get<std::vector<std::string>>();
  }
}

}  // namespace dms
