#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <variant>

#include "debatesim/agents/factory.hpp"
#include "debatesim/montecarlo/plan.hpp"
#include "debatesim/persistence/run_store.hpp"

namespace debatesim {

// The sink refused a record. The run stops; everything committed before the
// failure stays readable.
class SinkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// execute() on a store that already holds transcripts.
class StoreNotEmpty : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TrialOutcome = std::variant<TrialRecord, AbortedRecord>;

struct ConditionSummary {
  OutcomeCounts counts;  // trials run by this invocation
  std::size_t planned = 0;
  std::size_t skipped = 0;  // already stored before this invocation

  friend bool operator==(const ConditionSummary&, const ConditionSummary&) = default;
};

struct RunSummary {
  std::map<ToxicityLevel, ConditionSummary> by_condition;
  std::size_t executed = 0;
  std::size_t skipped = 0;
  std::size_t aborted = 0;
};

struct RunOptions {
  // Called once per committed trial, in plan order, under the commit lock.
  std::function<void(const TrialAssignment&, const TrialOutcome&)> on_commit;
};

// Runs one trial, retrying the whole debate on BackendError up to the plan's
// trial_retry_limit. Other exceptions propagate.
TrialOutcome run_trial(const ExperimentPlan& plan, const AgentFactory& factory,
                       const TrialAssignment& trial);

// Runs every planned trial the sink does not already hold, on up to
// concurrency_limit worker threads. Records reach the sink in plan order, so
// the log is the same for any concurrency. Throws SinkError if the sink fails
// and rethrows the first non-backend exception from a trial.
RunSummary run_trials(const ExperimentPlan& plan, const AgentFactory& factory, TrialSink& sink,
                      const RunOptions& options = {});

// Fresh run. Throws PlanMismatch if the store belongs to another plan and
// StoreNotEmpty if it already holds transcripts. Writes summary.json.
RunSummary execute(const ExperimentPlan& plan, const AgentFactory& factory, RunStore& store,
                   const RunOptions& options = {});

// Completes a partial run of the same plan. Trials with a stored transcript
// are skipped; aborted ones are retried. Writes summary.json.
RunSummary resume(const ExperimentPlan& plan, const AgentFactory& factory, RunStore& store,
                  const RunOptions& options = {});

}  // namespace debatesim
