#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "debatesim/agents/factory.hpp"
#include "debatesim/agents/prompt.hpp"
#include "debatesim/core/corpus.hpp"
#include "debatesim/core/protocol.hpp"
#include "debatesim/core/types.hpp"

namespace debatesim {

struct ExperimentPlan {
  int n_per_condition = 100;
  std::vector<ToxicityLevel> levels{std::begin(kAllLevels), std::end(kAllLevels)};
  std::vector<Topic> corpus = bundled_topics();
  std::uint64_t master_seed = 1;
  int concurrency_limit = 1;
  BackendSpec backend;
  int round_cap = 60;
  int min_rounds = 2;
  std::string model_tag = "synthetic";
  // Whole-debate reruns after a BackendError before the trial is aborted.
  int trial_retry_limit = 1;
  PromptKit prompts;
  ConvergenceProtocol protocol;
};

// Throws InvalidConfig.
void validate(const ExperimentPlan& plan);

struct TrialAssignment {
  std::uint64_t trial_index = 0;      // position in the plan, unique per store
  std::uint64_t condition_index = 0;  // position within its condition
  ToxicityLevel condition = ToxicityLevel::No;
  Topic topic;
  Side starter = Side::Pro;
  std::optional<Side> toxic_side;
  std::uint64_t derived_seed = 0;

  friend bool operator==(const TrialAssignment&, const TrialAssignment&) = default;
};

// Stable hash of (master seed, condition, index within the condition).
std::uint64_t derive_trial_seed(std::uint64_t master_seed, ToxicityLevel condition,
                                std::uint64_t condition_index);

// n_per_condition assignments per level, levels in plan order. Topic is drawn
// uniformly with replacement; starter and toxic side are independent fair
// coins. A pure function of the plan.
std::vector<TrialAssignment> plan_trials(const ExperimentPlan& plan);

DebateConfig make_debate_config(const ExperimentPlan& plan, const TrialAssignment& trial);

// Every plan field that can change a stored transcript. Leaves out
// concurrency_limit, trial_retry_limit and endpoint secrets/transport tuning.
nlohmann::json plan_document(const ExperimentPlan& plan);

// 16 hex digits of FNV-1a 64 over the serialized plan document.
std::string plan_fingerprint(const ExperimentPlan& plan);

}  // namespace debatesim
