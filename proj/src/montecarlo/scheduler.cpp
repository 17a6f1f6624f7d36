#include "debatesim/montecarlo/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace debatesim {

TrialOutcome run_trial(const ExperimentPlan& plan, const AgentFactory& factory,
                       const TrialAssignment& trial) {
  const DebateConfig config = make_debate_config(plan, trial);
  std::string last_error;
  for (int attempt = 0; attempt <= plan.trial_retry_limit; ++attempt) {
    try {
      AgentPair agents = factory.make(config, trial.trial_index);
      Transcript t = run_debate(config, *agents.pro, *agents.con, plan.protocol);
      return TrialRecord{trial.trial_index, std::move(t)};
    } catch (const BackendError& e) {
      last_error = e.what();
    }
  }
  return AbortedRecord{trial.trial_index, trial.condition, plan.model_tag, last_error};
}

namespace {

void tally(ConditionSummary& s, const TrialOutcome& outcome) {
  if (const auto* rec = std::get_if<TrialRecord>(&outcome)) {
    switch (rec->transcript.status) {
      case DebateStatus::Converged: ++s.counts.converged; break;
      case DebateStatus::Capped: ++s.counts.capped; break;
      case DebateStatus::Refused: ++s.counts.refused; break;
    }
  } else {
    ++s.counts.aborted;
  }
}

// Hands outcomes to the sink strictly in plan order. Workers finish out of
// order, so results wait in `slots` until every earlier one is committed.
class OrderedCommitter {
 public:
  OrderedCommitter(std::vector<const TrialAssignment*> pending, TrialSink& sink,
                   RunSummary& summary, const RunOptions& options)
      : pending_(std::move(pending)),
        slots_(pending_.size()),
        sink_(sink),
        summary_(summary),
        options_(options) {}

  std::size_t size() const { return pending_.size(); }
  const TrialAssignment& at(std::size_t i) const { return *pending_[i]; }

  // Returns false once the run has been stopped.
  bool deliver(std::size_t i, TrialOutcome outcome) {
    std::lock_guard lock(mutex_);
    if (failure_) return false;
    slots_[i] = std::move(outcome);
    while (next_ < slots_.size() && slots_[next_]) {
      const TrialOutcome& out = *slots_[next_];
      try {
        if (const auto* rec = std::get_if<TrialRecord>(&out)) {
          sink_.append(*rec);
        } else {
          sink_.append_aborted(std::get<AbortedRecord>(out));
        }
      } catch (const std::exception& e) {
        failure_ = std::make_exception_ptr(
            SinkError("sink rejected trial " + std::to_string(pending_[next_]->trial_index) +
                      ": " + e.what()));
        return false;
      }
      tally(summary_.by_condition[pending_[next_]->condition], out);
      ++summary_.executed;
      if (std::holds_alternative<AbortedRecord>(out)) ++summary_.aborted;
      if (options_.on_commit) options_.on_commit(*pending_[next_], out);
      slots_[next_].reset();
      ++next_;
    }
    return true;
  }

  void fail(std::exception_ptr error) {
    std::lock_guard lock(mutex_);
    if (!failure_) failure_ = std::move(error);
  }

  bool stopped() const {
    std::lock_guard lock(mutex_);
    return failure_ != nullptr;
  }

  std::exception_ptr failure() const {
    std::lock_guard lock(mutex_);
    return failure_;
  }

 private:
  std::vector<const TrialAssignment*> pending_;
  std::vector<std::optional<TrialOutcome>> slots_;
  TrialSink& sink_;
  RunSummary& summary_;
  const RunOptions& options_;
  mutable std::mutex mutex_;
  std::size_t next_ = 0;
  std::exception_ptr failure_;
};

}  // namespace

RunSummary run_trials(const ExperimentPlan& plan, const AgentFactory& factory, TrialSink& sink,
                      const RunOptions& options) {
  const std::vector<TrialAssignment> trials = plan_trials(plan);
  RunSummary summary;
  std::vector<const TrialAssignment*> pending;
  for (const TrialAssignment& t : trials) {
    ConditionSummary& cs = summary.by_condition[t.condition];
    ++cs.planned;
    if (sink.has_transcript(t.trial_index)) {
      ++cs.skipped;
      ++summary.skipped;
    } else {
      pending.push_back(&t);
    }
  }

  OrderedCommitter committer(std::move(pending), sink, summary, options);
  std::atomic<std::size_t> next_job{0};
  const auto worker = [&] {
    while (!committer.stopped()) {
      const std::size_t i = next_job.fetch_add(1);
      if (i >= committer.size()) return;
      try {
        if (!committer.deliver(i, run_trial(plan, factory, committer.at(i)))) return;
      } catch (...) {
        committer.fail(std::current_exception());
        return;
      }
    }
  };

  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(plan.concurrency_limit), committer.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) threads.emplace_back(worker);
  }

  if (auto failure = committer.failure()) std::rethrow_exception(failure);
  return summary;
}

namespace {

void check_store(const ExperimentPlan& plan, const RunStore& store) {
  const std::string fp = plan_fingerprint(plan);
  if (store.fingerprint() != fp) {
    throw PlanMismatch("store " + store.root().string() + " holds plan " + store.fingerprint() +
                       ", requested plan is " + fp);
  }
}

void refresh_summary(const RunStore& store) {
  store.write_summary(summary_json(load_outcomes(store), store.fingerprint()));
}

}  // namespace

RunSummary execute(const ExperimentPlan& plan, const AgentFactory& factory, RunStore& store,
                   const RunOptions& options) {
  check_store(plan, store);
  if (store.transcript_count() != 0) {
    throw StoreNotEmpty("store " + store.root().string() + " already holds " +
                        std::to_string(store.transcript_count()) + " transcripts; use resume");
  }
  RunSummary summary = run_trials(plan, factory, store, options);
  refresh_summary(store);
  return summary;
}

RunSummary resume(const ExperimentPlan& plan, const AgentFactory& factory, RunStore& store,
                  const RunOptions& options) {
  check_store(plan, store);
  RunSummary summary = run_trials(plan, factory, store, options);
  refresh_summary(store);
  return summary;
}

}  // namespace debatesim
