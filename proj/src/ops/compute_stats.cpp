#include "dms/ops/compute_stats.hpp"

#include <cmath>
#include <exception>
#include <span>

#include "dms/core/error.hpp"
#include "dms/ops/external_scorer.hpp"

namespace dms {

namespace {

struct Prepared {
  std::string op_name;
  std::string stat_name;
  StatInputs inputs = StatInputs::all;
  StatFn fn;                          // built-in operators
  std::optional<ScorerConfig> scorer;  // external scorers
};

std::vector<Prepared> prepare(const Dataset& dataset, const std::vector<StatSpec>& specs,
                              const OpRegistry& registry, const ComputeOptions& options) {
  std::vector<Prepared> out;
  std::map<std::string, std::string> writer;  // stat -> op within this call
  for (const auto& spec : specs) {
    Prepared p;
    p.op_name = spec.op_name;
    p.stat_name = registry.stat_name(spec);
    if (auto it = dataset.stat_origin.find(p.stat_name);
        it != dataset.stat_origin.end() && it->second.op_name != p.op_name) {
      throw InvalidArgument("statistic '" + p.stat_name + "' of operator '" + p.op_name +
                            "' collides with the one written by '" + it->second.op_name + "'");
    }
    if (auto [it, fresh] = writer.emplace(p.stat_name, p.op_name); !fresh && it->second != p.op_name) {
      throw InvalidArgument("operators '" + it->second + "' and '" + p.op_name + "' both write statistic '" +
                            p.stat_name + "'");
    }
    if (is_external(spec)) {
      p.scorer = scorer_config_from_params(p.stat_name, spec.params);
      if (options.max_parallel > 0 && !spec.params.contains("max_parallel")) {
        p.scorer->max_parallel = options.max_parallel;
      }
      p.inputs = StatInputs::all;
    } else {
      const auto* op = registry.find(spec.op_name);
      if (!op) throw InvalidArgument("unknown operator '" + spec.op_name + "'");
      p.fn = op->build(registry.validate_params(*op, spec.params, options.asset_dir));
      p.inputs = op->inputs;
    }
    out.push_back(std::move(p));
  }
  return out;
}

double checked(double v, const Prepared& p, const Sample& s) {
  if (!std::isfinite(v)) {
    throw InvalidArgument("statistic '" + p.stat_name + "' is not finite for sample '" + s.id + "'");
  }
  return v;
}

// Column-major buffer: values[spec * n + sample].
Dataset attach(const Dataset& dataset, const std::vector<Prepared>& prepared, const std::vector<double>& values) {
  Dataset out = dataset;
  const std::size_t n = dataset.size();
  for (std::size_t k = 0; k < prepared.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) out.samples[i].stats[prepared[k].stat_name] = values[k * n + i];
    out.stat_origin[prepared[k].stat_name] = StatOrigin{prepared[k].op_name, prepared[k].inputs};
  }
  return out;
}

void run_external(const Dataset& dataset, const std::vector<Prepared>& prepared, std::vector<double>& values) {
  const std::size_t n = dataset.size();
  for (std::size_t k = 0; k < prepared.size(); ++k) {
    if (!prepared[k].scorer) continue;
    auto scores = external_score(std::span<const Sample>(dataset.samples), *prepared[k].scorer);
    for (std::size_t i = 0; i < n; ++i) values[k * n + i] = scores.at(dataset.samples[i].id);
  }
}

}  // namespace

Dataset compute_stats_serial(const Dataset& dataset, const std::vector<StatSpec>& specs,
                             const OpRegistry& registry, const ComputeOptions& options) {
  if (specs.empty()) return dataset;
  const auto prepared = prepare(dataset, specs, registry, options);
  const std::size_t n = dataset.size();
  std::vector<double> values(prepared.size() * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < prepared.size(); ++k) {
      if (prepared[k].fn) values[k * n + i] = checked(prepared[k].fn(dataset.samples[i]), prepared[k], dataset.samples[i]);
    }
  }
  run_external(dataset, prepared, values);
  return attach(dataset, prepared, values);
}

Dataset compute_stats(const Dataset& dataset, const std::vector<StatSpec>& specs, const OpRegistry& registry,
                      const ComputeOptions& options) {
  if (specs.empty()) return dataset;
  const auto prepared = prepare(dataset, specs, registry, options);
  const auto n = static_cast<std::ptrdiff_t>(dataset.size());
  std::vector<double> values(prepared.size() * dataset.size());
  // The error reported is the one at the lowest sample index, as in the
  // serial loop.
  std::vector<std::exception_ptr> errors(dataset.size());
  bool any_error = false;
#pragma omp parallel for schedule(dynamic, 64) reduction(|| : any_error)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& s = dataset.samples[static_cast<std::size_t>(i)];
    try {
      for (std::size_t k = 0; k < prepared.size(); ++k) {
        if (prepared[k].fn) {
          values[k * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = checked(prepared[k].fn(s), prepared[k], s);
        }
      }
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
      any_error = true;
    }
  }
  if (any_error) {
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  run_external(dataset, prepared, values);
  return attach(dataset, prepared, values);
}

}  // namespace dms
