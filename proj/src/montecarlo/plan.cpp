#include "debatesim/montecarlo/plan.hpp"

#include <cstdio>
#include <set>

#include "debatesim/core/random.hpp"
#include "debatesim/persistence/records.hpp"

namespace debatesim {

namespace {

// Salt separating the assignment stream from the debate stream, which is
// seeded with the derived seed itself.
constexpr std::uint64_t kAssignmentSalt = 0x61737369676e6d74ULL;

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

void validate(const ExperimentPlan& plan) {
  if (plan.n_per_condition < 1) throw InvalidConfig("n_per_condition must be >= 1");
  if (plan.levels.empty()) throw InvalidConfig("at least one toxicity level is required");
  std::set<ToxicityLevel> seen;
  for (ToxicityLevel level : plan.levels) {
    if (!seen.insert(level).second) {
      throw InvalidConfig("toxicity level " + std::string(to_string(level)) + " listed twice");
    }
  }
  validate_corpus(plan.corpus);
  if (plan.concurrency_limit < 1) throw InvalidConfig("concurrency_limit must be >= 1");
  if (plan.trial_retry_limit < 0) throw InvalidConfig("trial_retry_limit must be >= 0");
  if (plan.min_rounds < 0) throw InvalidConfig("min_rounds must be >= 0");
  if (plan.round_cap < 2 || plan.round_cap < plan.min_rounds + 2) {
    throw InvalidConfig("round_cap must be >= max(2, min_rounds + 2)");
  }
  if (plan.protocol.concession_marker.empty()) throw InvalidConfig("empty concession marker");
  if (plan.backend.kind == BackendKind::Synthetic) plan.backend.synthetic.validate();
  validate(plan.prompts);
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, ToxicityLevel condition,
                                std::uint64_t condition_index) {
  return hash_seed({master_seed, static_cast<std::uint64_t>(condition), condition_index});
}

std::vector<TrialAssignment> plan_trials(const ExperimentPlan& plan) {
  validate(plan);
  std::vector<TrialAssignment> out;
  out.reserve(plan.levels.size() * static_cast<std::size_t>(plan.n_per_condition));
  std::uint64_t trial_index = 0;
  for (ToxicityLevel level : plan.levels) {
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(plan.n_per_condition); ++i) {
      TrialAssignment a;
      a.trial_index = trial_index++;
      a.condition_index = i;
      a.condition = level;
      a.derived_seed = derive_trial_seed(plan.master_seed, level, i);

      Rng rng(hash_seed({a.derived_seed, kAssignmentSalt}));
      a.topic = plan.corpus[rng.below(plan.corpus.size())];
      a.starter = (rng.next_u64() >> 63) ? Side::Con : Side::Pro;
      const Side toxic = (rng.next_u64() >> 63) ? Side::Con : Side::Pro;
      if (level != ToxicityLevel::No) a.toxic_side = toxic;
      out.push_back(std::move(a));
    }
  }
  return out;
}

DebateConfig make_debate_config(const ExperimentPlan& plan, const TrialAssignment& trial) {
  DebateConfig c;
  c.topic = trial.topic;
  c.starter = trial.starter;
  c.toxic_side = trial.toxic_side;
  c.level = trial.condition;
  c.round_cap = plan.round_cap;
  c.min_rounds = plan.min_rounds;
  c.seed = trial.derived_seed;
  c.model_tag = plan.model_tag;
  return c;
}

nlohmann::json plan_document(const ExperimentPlan& plan) {
  nlohmann::json levels = nlohmann::json::array();
  for (ToxicityLevel level : plan.levels) levels.push_back(std::string(to_string(level)));
  nlohmann::json corpus = nlohmann::json::array();
  for (const Topic& t : plan.corpus) corpus.push_back(to_json(t));
  const auto& layout = plan.prompts.layout;
  nlohmann::json directives = nlohmann::json::object();
  for (ToxicityLevel level : kAllLevels) {
    directives[std::string(to_string(level))] = plan.prompts.directives.at(level);
  }
  return {
      {"n_per_condition", plan.n_per_condition},
      {"levels", std::move(levels)},
      {"corpus", std::move(corpus)},
      {"master_seed", plan.master_seed},
      {"round_cap", plan.round_cap},
      {"min_rounds", plan.min_rounds},
      {"model_tag", plan.model_tag},
      {"backend", to_fingerprint_json(plan.backend)},
      {"prompts",
       {{"persona_slot", layout.persona_slot},
        {"stance_slot", layout.stance_slot},
        {"topic_slot", layout.topic_slot},
        {"toxicity_slot", layout.toxicity_slot},
        {"protocol_slot", layout.protocol_slot},
        {"directives", std::move(directives)}}},
      {"protocol",
       {{"concession_marker", plan.protocol.concession_marker},
        {"refusal_patterns", plan.protocol.refusal_patterns}}},
  };
}

std::string plan_fingerprint(const ExperimentPlan& plan) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(plan_document(plan).dump())));
  return buf;
}

}  // namespace debatesim
