#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "debatesim/persistence/records.hpp"
#include "debatesim/stats/analysis.hpp"

namespace debatesim {

class StorageFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateTrial : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The store was written for a different experiment plan.
class PlanMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Where finished trials go. The scheduler calls append/append_aborted from a
// single thread at a time.
class TrialSink {
 public:
  virtual ~TrialSink() = default;
  virtual void append(const TrialRecord& record) = 0;
  virtual void append_aborted(const AbortedRecord& record) = 0;
  virtual bool has_transcript(std::uint64_t trial_index) const = 0;
};

// Store layout, relative to the root directory:
//   plan.json          {"fingerprint": ..., "plan": ...}, written once
//   transcripts.jsonl  one TrialRecord per line, append-only
//   aborted.jsonl      one AbortedRecord per line, append-only
//   quarantine.jsonl   partial lines cut from the logs on open
//   summary.json       store-wide outcome counts
//   exports/           CSV tables and histogram data
class RunStore final : public TrialSink {
 public:
  enum class Durability { Sync, Flush };

  // Creates the store, or reopens it when plan.json carries the same
  // fingerprint. Throws PlanMismatch otherwise.
  static RunStore create(const std::filesystem::path& root, const std::string& fingerprint,
                         const nlohmann::json& plan_document,
                         Durability durability = Durability::Sync);

  // Opens an existing store. Throws StorageFailure when plan.json is missing.
  static RunStore open(const std::filesystem::path& root,
                       Durability durability = Durability::Sync);

  RunStore(RunStore&& other) noexcept;
  RunStore& operator=(RunStore&&) = delete;
  ~RunStore() override;

  const std::filesystem::path& root() const { return root_; }
  const std::string& fingerprint() const { return fingerprint_; }
  const nlohmann::json& plan_document() const { return plan_document_; }

  std::filesystem::path plan_path() const { return root_ / "plan.json"; }
  std::filesystem::path transcripts_path() const { return root_ / "transcripts.jsonl"; }
  std::filesystem::path aborted_path() const { return root_ / "aborted.jsonl"; }
  std::filesystem::path quarantine_path() const { return root_ / "quarantine.jsonl"; }
  std::filesystem::path summary_path() const { return root_ / "summary.json"; }
  std::filesystem::path exports_dir() const { return root_ / "exports"; }

  // Durably appends one line. Throws DuplicateTrial if the trial already has
  // a transcript, StorageFailure on I/O errors.
  void append(const TrialRecord& record) override;
  void append_aborted(const AbortedRecord& record) override;
  bool has_transcript(std::uint64_t trial_index) const override;

  std::size_t transcript_count() const;
  // Lines cut or skipped as unreadable since this store was opened.
  std::size_t quarantined_lines() const { return quarantined_; }

  std::vector<TrialRecord> read_transcripts() const;
  std::vector<AbortedRecord> read_aborted() const;

  void write_summary(const nlohmann::json& summary) const;

 private:
  RunStore(std::filesystem::path root, Durability durability);
  void load_plan();
  void recover_logs();
  std::vector<std::string> recover_log(const std::filesystem::path& path);
  void append_line(int fd, const std::string& line);

  std::filesystem::path root_;
  Durability durability_;
  std::string fingerprint_;
  nlohmann::json plan_document_;
  std::set<std::uint64_t> stored_;
  std::size_t quarantined_ = 0;
  int transcripts_fd_ = -1;
  int aborted_fd_ = -1;
  mutable std::mutex mutex_;
};

struct OutcomeCounts {
  std::size_t converged = 0;
  std::size_t capped = 0;
  std::size_t refused = 0;
  std::size_t aborted = 0;

  std::size_t total() const { return converged + capped + refused + aborted; }
  friend bool operator==(const OutcomeCounts&, const OutcomeCounts&) = default;
};

struct LoadedOutcomes {
  std::vector<stats::OutcomeRecord> records;  // converged debates only
  std::map<std::string, std::map<ToxicityLevel, OutcomeCounts>> counts;  // by model, level
  OutcomeCounts totals;
};

stats::OutcomeRecord to_outcome(const Transcript& transcript);

// One OutcomeRecord per converged transcript; capped, refused and aborted
// trials are counted but excluded.
LoadedOutcomes load_outcomes(const RunStore& store);

// Store-wide counts as written to summary.json.
nlohmann::json summary_json(const LoadedOutcomes& loaded, const std::string& fingerprint);

}  // namespace debatesim
