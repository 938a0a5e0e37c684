#include "dms/ops/registry.hpp"

#include <memory>

#include "dms/core/error.hpp"
#include "dms/ops/bigram_lm.hpp"
#include "dms/ops/lexicon.hpp"
#include "dms/ops/text_stats.hpp"

namespace dms {

void to_json(Json& j, const StatSpec& s) {
  j = Json{{"op", s.op_name}, {"params", s.params}};
  if (!s.stat_name.empty()) j["stat_name"] = s.stat_name;
}

void from_json(const Json& j, StatSpec& s) {
  s = StatSpec{};
  if (j.is_string()) {
    s.op_name = j.get<std::string>();
    return;
  }
  s.op_name = j.contains("op") ? j.at("op").get<std::string>() : j.at("op_name").get<std::string>();
  s.stat_name = j.value("stat_name", std::string{});
  s.params = j.value("params", Json::object());
}

bool is_external(const StatSpec& spec) { return spec.params.contains("command"); }

namespace {

std::size_t rep_len(const Json& p) { return static_cast<std::size_t>(p.at("rep_len").get<std::int64_t>()); }

StatFn lexicon_ratio_fn(const Json& p) {
  auto lex = std::make_shared<const LexiconAsset>(LexiconAsset::load(p.at("lexicon").get<std::string>()));
  return [lex](const Sample& s) { return stats::lexicon_ratio(s.text, *lex); };
}

}  // namespace

OpRegistry OpRegistry::with_builtins() {
  OpRegistry r;
  const ParamSpec rep{"rep_len", ParamKind::integer, false, 10, 1};
  const ParamSpec lexicon{"lexicon", ParamKind::path, true, nullptr, 0};

  r.add({"text_length_filter", "text_length", StatInputs::text, {}, [](const Json&) -> StatFn {
           return [](const Sample& s) { return static_cast<double>(stats::counts(s.text).text_length); };
         }});
  r.add({"words_num_filter", "word_number", StatInputs::text, {}, [](const Json&) -> StatFn {
           return [](const Sample& s) { return static_cast<double>(stats::counts(s.text).word_number); };
         }});
  r.add({"token_num_filter", "token_number", StatInputs::text, {}, [](const Json&) -> StatFn {
           return [](const Sample& s) {
             return static_cast<double>(text::WhitespaceTokenizer{}.count(s.text));
           };
         }});
  r.add({"alphanumeric_filter", "alnum_ratio", StatInputs::text, {}, [](const Json&) -> StatFn {
           return [](const Sample& s) { return stats::alphanumeric_ratio(s.text); };
         }});
  r.add({"special_characters_filter", "special_char_ratio", StatInputs::text, {},
         [](const Json&) -> StatFn {
           return [](const Sample& s) { return stats::special_char_ratio(s.text); };
         }});
  r.add({"character_repetition_filter", "char_rep_ratio", StatInputs::text, {rep},
         [](const Json& p) -> StatFn {
           const auto n = rep_len(p);
           return [n](const Sample& s) { return stats::char_ngram_repetition(s.text, n); };
         }});
  r.add({"word_repetition_filter", "word_rep_ratio", StatInputs::text, {rep},
         [](const Json& p) -> StatFn {
           const auto n = rep_len(p);
           return [n](const Sample& s) { return stats::word_ngram_repetition(s.text, n); };
         }});
  r.add({"stopwords_filter", "stopwords_ratio", StatInputs::text, {lexicon}, lexicon_ratio_fn});
  r.add({"flagged_words_filter", "flagged_words_ratio", StatInputs::text, {lexicon}, lexicon_ratio_fn});
  r.add({"text_action_filter", "num_action", StatInputs::text, {lexicon}, [](const Json& p) -> StatFn {
           auto verbs = std::make_shared<const LexiconAsset>(
               LexiconAsset::load(p.at("lexicon").get<std::string>()));
           return [verbs](const Sample& s) {
             return static_cast<double>(stats::action_number(s.text, *verbs));
           };
         }});
  r.add({"perplexity_filter", "perplexity", StatInputs::text,
         {{"counts", ParamKind::path, true, nullptr, 0}}, [](const Json& p) -> StatFn {
           auto lm = std::make_shared<const BigramLanguageModel>(
               BigramLanguageModel::load(p.at("counts").get<std::string>()));
           return [lm](const Sample& s) { return lm->perplexity(s.text); };
         }});
  return r;
}

void OpRegistry::add(OpDescriptor op) {
  if (op.op_name.empty() || op.stat_name.empty()) throw InvalidArgument("operator needs a name and a statistic");
  auto name = op.op_name;
  ops_.insert_or_assign(std::move(name), std::move(op));
}

const OpDescriptor* OpRegistry::find(std::string_view op_name) const {
  auto it = ops_.find(op_name);
  return it == ops_.end() ? nullptr : &it->second;
}

std::vector<std::string> OpRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : ops_) out.push_back(k);
  return out;
}

Json OpRegistry::validate_params(const OpDescriptor& op, const Json& params,
                                 const std::filesystem::path& base_dir) const {
  if (!params.is_null() && !params.is_object()) {
    throw InvalidArgument("params of '" + op.op_name + "' must be an object");
  }
  Json out = Json::object();
  const Json in = params.is_null() ? Json::object() : params;
  for (const auto& [key, _] : in.items()) {
    if (key == "stat_name") continue;
    bool known = false;
    for (const auto& ps : op.params) known = known || ps.name == key;
    if (!known) throw InvalidArgument("operator '" + op.op_name + "' has no parameter '" + key + "'");
  }
  for (const auto& ps : op.params) {
    auto it = in.find(ps.name);
    if (it == in.end() || it->is_null()) {
      if (ps.required) {
        throw InvalidArgument("operator '" + op.op_name + "' requires parameter '" + ps.name + "'");
      }
      out[ps.name] = ps.default_value;
      continue;
    }
    switch (ps.kind) {
      case ParamKind::integer:
        if (!it->is_number_integer()) {
          throw InvalidArgument("parameter '" + ps.name + "' of '" + op.op_name + "' must be an integer");
        }
        if (it->get<std::int64_t>() < ps.min_integer) {
          throw InvalidArgument("parameter '" + ps.name + "' of '" + op.op_name + "' must be >= " +
                                std::to_string(ps.min_integer));
        }
        out[ps.name] = *it;
        break;
      case ParamKind::string:
        if (!it->is_string()) throw InvalidArgument("parameter '" + ps.name + "' must be a string");
        out[ps.name] = *it;
        break;
      case ParamKind::path: {
        if (!it->is_string()) throw InvalidArgument("parameter '" + ps.name + "' must be a path string");
        std::filesystem::path p = it->get<std::string>();
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        out[ps.name] = p.string();
        break;
      }
    }
  }
  return out;
}

std::string OpRegistry::stat_name(std::string_view op_name, const Json& params) const {
  if (params.is_object()) {
    if (auto it = params.find("stat_name"); it != params.end() && it->is_string()) {
      return it->get<std::string>();
    }
  }
  if (const auto* op = find(op_name)) return op->stat_name;
  throw InvalidArgument("unknown operator '" + std::string(op_name) +
                        "' (external operators must name their statistic)");
}

std::string OpRegistry::stat_name(const StatSpec& spec) const {
  if (!spec.stat_name.empty()) return spec.stat_name;
  return stat_name(spec.op_name, spec.params);
}

}  // namespace dms
