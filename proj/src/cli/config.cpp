#include "debatesim/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "debatesim/core/corpus.hpp"

namespace debatesim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const json& object_or_empty(const json& doc, const char* key, const std::string& where) {
  static const json empty = json::object();
  if (!doc.contains(key)) return empty;
  const json& j = doc.at(key);
  if (!j.is_object()) throw ConfigError(where + "." + key + " must be an object");
  return j;
}

void check_keys(const json& section, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& [key, value] : section.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key " + where + "." + key);
  }
}

// Reads an optional scalar, naming the offending key on type errors.
template <typename T>
void read(const json& section, const char* key, T& out, const std::string& where) {
  if (!section.contains(key)) return;
  try {
    out = section.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

template <typename T>
void read_opt(const json& section, const char* key, std::optional<T>& out,
              const std::string& where) {
  if (!section.contains(key)) return;
  if (section.at(key).is_null()) {
    out.reset();
    return;
  }
  T value{};
  read(section, key, value, where);
  out = value;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

void parse_plan(const json& s, const fs::path& base, ExperimentPlan& plan) {
  const std::string w = "plan";
  check_keys(s,
             {"n_per_condition", "levels", "master_seed", "concurrency_limit", "round_cap",
              "min_rounds", "model_tag", "trial_retry_limit", "corpus"},
             w);
  read(s, "n_per_condition", plan.n_per_condition, w);
  read(s, "master_seed", plan.master_seed, w);
  read(s, "concurrency_limit", plan.concurrency_limit, w);
  read(s, "round_cap", plan.round_cap, w);
  read(s, "min_rounds", plan.min_rounds, w);
  read(s, "model_tag", plan.model_tag, w);
  read(s, "trial_retry_limit", plan.trial_retry_limit, w);
  if (s.contains("levels")) {
    std::vector<std::string> names;
    read(s, "levels", names, w);
    plan.levels.clear();
    for (const auto& n : names) plan.levels.push_back(parse_level(n));
  }
  if (s.contains("corpus")) {
    std::string path;
    read(s, "corpus", path, w);
    plan.corpus = load_corpus(resolve(base, path));
  }
}

void parse_synthetic(const json& s, SyntheticAgentParams& p) {
  const std::string w = "backend.synthetic";
  check_keys(s,
             {"base_hazard", "slowdown", "anchoring_bonus", "toxic_persuasion_bonus",
              "hazard_floor", "hazard_ceiling", "first_opportunity_turn", "order_neutral",
              "refusal_probability"},
             w);
  read(s, "base_hazard", p.base_hazard, w);
  if (s.contains("slowdown")) {
    const json& sl = s.at("slowdown");
    if (!sl.is_object()) throw ConfigError(w + ".slowdown must map level names to factors");
    for (const auto& [name, value] : sl.items()) {
      if (!value.is_number()) throw ConfigError(w + ".slowdown." + name + " must be a number");
      p.slowdown[static_cast<std::size_t>(parse_level(name))] = value.get<double>();
    }
  }
  read(s, "anchoring_bonus", p.anchoring_bonus, w);
  read(s, "toxic_persuasion_bonus", p.toxic_persuasion_bonus, w);
  read(s, "hazard_floor", p.hazard_floor, w);
  read(s, "hazard_ceiling", p.hazard_ceiling, w);
  read(s, "first_opportunity_turn", p.first_opportunity_turn, w);
  read(s, "order_neutral", p.order_neutral, w);
  read(s, "refusal_probability", p.refusal_probability, w);
}

void parse_endpoint(const json& s, EndpointSettings& e) {
  const std::string w = "backend.endpoint";
  if (s.contains("token")) {
    throw ConfigError(w + ".token: secrets are read from the environment (token_env), not the config");
  }
  check_keys(s,
             {"base_url", "path", "model", "temperature", "top_p", "max_tokens", "auth_header",
              "auth_prefix", "token_env", "retry_limit", "backoff_ms", "timeout_ms",
              "opening_prompt"},
             w);
  read(s, "base_url", e.base_url, w);
  read(s, "path", e.path, w);
  read(s, "model", e.model, w);
  read_opt(s, "temperature", e.temperature, w);
  read_opt(s, "top_p", e.top_p, w);
  read_opt(s, "max_tokens", e.max_tokens, w);
  read(s, "auth_header", e.auth_header, w);
  read(s, "auth_prefix", e.auth_prefix, w);
  read(s, "token_env", e.token_env, w);
  read(s, "retry_limit", e.retry_limit, w);
  long long ms = e.backoff_base.count();
  read(s, "backoff_ms", ms, w);
  e.backoff_base = std::chrono::milliseconds(ms);
  ms = e.timeout.count();
  read(s, "timeout_ms", ms, w);
  e.timeout = std::chrono::milliseconds(ms);
  read(s, "opening_prompt", e.opening_prompt, w);
  if (e.retry_limit < 0) throw ConfigError(w + ".retry_limit must be >= 0");
}

void parse_backend(const json& s, BackendSpec& spec) {
  const std::string w = "backend";
  check_keys(s, {"kind", "synthetic", "endpoint", "scripted"}, w);
  if (s.contains("kind")) {
    std::string kind;
    read(s, "kind", kind, w);
    spec.kind = parse_backend_kind(kind);
  }
  parse_synthetic(object_or_empty(s, "synthetic", w), spec.synthetic);
  parse_endpoint(object_or_empty(s, "endpoint", w), spec.endpoint);
  const json& sc = object_or_empty(s, "scripted", w);
  check_keys(sc, {"pro", "con"}, w + ".scripted");
  read(sc, "pro", spec.scripted.pro, w + ".scripted");
  read(sc, "con", spec.scripted.con, w + ".scripted");
}

void parse_prompts(const json& s, const fs::path& base, PromptKit& kit) {
  const std::string w = "prompts";
  check_keys(s, {"directives_dir", "layout"}, w);
  if (s.contains("directives_dir")) {
    std::string dir;
    read(s, "directives_dir", dir, w);
    kit.directives = ToxicityDirectives::load(resolve(base, dir));
  }
  const json& l = object_or_empty(s, "layout", w);
  const std::string lw = w + ".layout";
  check_keys(l, {"persona_slot", "stance_slot", "topic_slot", "toxicity_slot", "protocol_slot"},
             lw);
  read(l, "persona_slot", kit.layout.persona_slot, lw);
  read(l, "stance_slot", kit.layout.stance_slot, lw);
  read(l, "topic_slot", kit.layout.topic_slot, lw);
  read(l, "toxicity_slot", kit.layout.toxicity_slot, lw);
  read(l, "protocol_slot", kit.layout.protocol_slot, lw);
}

void parse_stats(const json& s, StatsConventions& c) {
  const std::string w = "stats";
  check_keys(s, {"truncate_at", "t_test", "alpha"}, w);
  read(s, "truncate_at", c.truncate_at, w);
  read(s, "alpha", c.alpha, w);
  if (s.contains("t_test")) {
    std::string flavor;
    read(s, "t_test", flavor, w);
    if (flavor == "welch") {
      c.t_test = stats::TTestFlavor::Welch;
    } else if (flavor == "student") {
      c.t_test = stats::TTestFlavor::Student;
    } else {
      throw ConfigError("stats.t_test must be \"welch\" or \"student\"");
    }
  }
  if (c.truncate_at < 1) throw ConfigError("stats.truncate_at must be >= 1");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError("stats.alpha must be in (0, 1)");
}

}  // namespace

RunConfig parse_config(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  check_keys(doc, {"plan", "backend", "prompts", "protocol", "stats"}, "config");
  RunConfig cfg;
  try {
    parse_plan(object_or_empty(doc, "plan", "config"), base_dir, cfg.plan);
    parse_backend(object_or_empty(doc, "backend", "config"), cfg.plan.backend);
    parse_prompts(object_or_empty(doc, "prompts", "config"), base_dir, cfg.plan.prompts);
    const json& proto = object_or_empty(doc, "protocol", "config");
    check_keys(proto, {"concession_marker", "refusal_patterns"}, "protocol");
    read(proto, "concession_marker", cfg.plan.protocol.concession_marker, "protocol");
    read(proto, "refusal_patterns", cfg.plan.protocol.refusal_patterns, "protocol");
    parse_stats(object_or_empty(doc, "stats", "config"), cfg.stats);
  } catch (const std::invalid_argument& e) {
    // parse_level & co, InvalidConfig, TemplateError
    throw ConfigError(e.what());
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError(e.what());
  }

  EndpointSettings& ep = cfg.plan.backend.endpoint;
  if (!ep.token_env.empty()) {
    if (const char* token = std::getenv(ep.token_env.c_str())) ep.token = token;
  }
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  json doc;
  try {
    doc = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc, fs::absolute(path).parent_path());
}

std::vector<ToxicityLevel> parse_levels(const std::string& text) {
  std::vector<ToxicityLevel> out;
  if (text == "all") return {std::begin(kAllLevels), std::end(kAllLevels)};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(parse_level(item));
  }
  if (out.empty()) throw std::invalid_argument("no toxicity levels in \"" + text + "\"");
  return out;
}

void apply_overrides(RunConfig& config, const Overrides& o) {
  if (o.seed) config.plan.master_seed = *o.seed;
  if (o.n) config.plan.n_per_condition = *o.n;
  if (o.concurrency) config.plan.concurrency_limit = *o.concurrency;
  if (o.backend) config.plan.backend.kind = *o.backend;
  if (o.levels) config.plan.levels = *o.levels;
  if (o.truncate_at) config.stats.truncate_at = *o.truncate_at;
}

}  // namespace debatesim
