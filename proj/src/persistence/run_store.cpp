#include "debatesim/persistence/run_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace debatesim {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& data) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t pos = data.find('\n'); pos != std::string::npos; pos = data.find('\n', start)) {
    if (pos > start) lines.push_back(data.substr(start, pos - start));
    start = pos + 1;
  }
  return lines;
}

std::string errno_text() { return std::strerror(errno); }

int open_append(const fs::path& path) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) throw StorageFailure("cannot open " + path.string() + ": " + errno_text());
  return fd;
}

void write_all(int fd, const std::string& data, const fs::path& path) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw StorageFailure("write to " + path.string() + " failed: " + errno_text());
    }
    done += static_cast<std::size_t>(n);
  }
}

void write_file_atomic(const fs::path& path, const std::string& data) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << data;
    out.flush();
    if (!out) throw StorageFailure("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw StorageFailure("cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace

RunStore::RunStore(fs::path root, Durability durability)
    : root_(std::move(root)), durability_(durability) {}

RunStore::RunStore(RunStore&& other) noexcept
    : root_(std::move(other.root_)),
      durability_(other.durability_),
      fingerprint_(std::move(other.fingerprint_)),
      plan_document_(std::move(other.plan_document_)),
      stored_(std::move(other.stored_)),
      quarantined_(other.quarantined_),
      transcripts_fd_(std::exchange(other.transcripts_fd_, -1)),
      aborted_fd_(std::exchange(other.aborted_fd_, -1)) {}

RunStore::~RunStore() {
  if (transcripts_fd_ >= 0) ::close(transcripts_fd_);
  if (aborted_fd_ >= 0) ::close(aborted_fd_);
}

RunStore RunStore::create(const fs::path& root, const std::string& fingerprint,
                          const nlohmann::json& plan_document, Durability durability) {
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw StorageFailure("cannot create store " + root.string() + ": " + ec.message());

  RunStore store(root, durability);
  if (fs::exists(store.plan_path())) {
    store.load_plan();
    if (store.fingerprint_ != fingerprint) {
      throw PlanMismatch("store " + root.string() + " holds plan " + store.fingerprint_ +
                         ", requested plan is " + fingerprint);
    }
  } else {
    store.fingerprint_ = fingerprint;
    store.plan_document_ = plan_document;
    const nlohmann::json doc{{"fingerprint", fingerprint}, {"plan", plan_document}};
    write_file_atomic(store.plan_path(), doc.dump(2) + "\n");
  }
  store.recover_logs();
  return store;
}

RunStore RunStore::open(const fs::path& root, Durability durability) {
  RunStore store(root, durability);
  if (!fs::exists(store.plan_path())) {
    throw StorageFailure("no run store at " + root.string() + " (plan.json missing)");
  }
  store.load_plan();
  store.recover_logs();
  return store;
}

void RunStore::load_plan() {
  try {
    const auto doc = nlohmann::json::parse(read_file(plan_path()));
    fingerprint_ = doc.at("fingerprint").get<std::string>();
    plan_document_ = doc.at("plan");
  } catch (const nlohmann::json::exception& e) {
    throw StorageFailure("unreadable " + plan_path().string() + ": " + e.what());
  }
}

std::vector<std::string> RunStore::recover_log(const fs::path& path) {
  if (!fs::exists(path)) return {};
  const std::string data = read_file(path);
  const std::size_t last_newline = data.rfind('\n');
  const std::size_t complete = last_newline == std::string::npos ? 0 : last_newline + 1;
  if (complete < data.size()) {
    // Crash artifact: keep the fragment for inspection, cut it from the log.
    const int qfd = open_append(quarantine_path());
    try {
      write_all(qfd, data.substr(complete) + "\n", quarantine_path());
    } catch (...) {
      ::close(qfd);
      throw;
    }
    ::close(qfd);
    std::error_code ec;
    fs::resize_file(path, complete, ec);
    if (ec) throw StorageFailure("cannot truncate " + path.string() + ": " + ec.message());
    ++quarantined_;
  }
  return split_lines(data.substr(0, complete));
}

void RunStore::recover_logs() {
  for (const auto& line : recover_log(transcripts_path())) {
    try {
      stored_.insert(nlohmann::json::parse(line).at("trial").get<std::uint64_t>());
    } catch (const nlohmann::json::exception&) {
      ++quarantined_;
    }
  }
  recover_log(aborted_path());
  transcripts_fd_ = open_append(transcripts_path());
  aborted_fd_ = open_append(aborted_path());
}

void RunStore::append_line(int fd, const std::string& line) {
  const fs::path& path = fd == transcripts_fd_ ? transcripts_path() : aborted_path();
  write_all(fd, line, path);
  if (durability_ == Durability::Sync && ::fdatasync(fd) != 0) {
    throw StorageFailure("fdatasync on " + path.string() + " failed: " + errno_text());
  }
}

void RunStore::append(const TrialRecord& record) {
  std::lock_guard lock(mutex_);
  if (stored_.contains(record.trial_index)) {
    throw DuplicateTrial("trial " + std::to_string(record.trial_index) + " is already stored");
  }
  append_line(transcripts_fd_, encode_line(to_json(record)) + "\n");
  stored_.insert(record.trial_index);
}

void RunStore::append_aborted(const AbortedRecord& record) {
  std::lock_guard lock(mutex_);
  append_line(aborted_fd_, encode_line(to_json(record)) + "\n");
}

bool RunStore::has_transcript(std::uint64_t trial_index) const {
  std::lock_guard lock(mutex_);
  return stored_.contains(trial_index);
}

std::size_t RunStore::transcript_count() const {
  std::lock_guard lock(mutex_);
  return stored_.size();
}

std::vector<TrialRecord> RunStore::read_transcripts() const {
  std::vector<TrialRecord> out;
  for (const auto& line : split_lines(read_file(transcripts_path()))) {
    try {
      out.push_back(trial_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception&) {
      continue;  // counted at open
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  return out;
}

std::vector<AbortedRecord> RunStore::read_aborted() const {
  std::vector<AbortedRecord> out;
  for (const auto& line : split_lines(read_file(aborted_path()))) {
    try {
      out.push_back(aborted_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception&) {
      continue;
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  return out;
}

void RunStore::write_summary(const nlohmann::json& summary) const {
  write_file_atomic(summary_path(), summary.dump(2) + "\n");
}

stats::OutcomeRecord to_outcome(const Transcript& t) {
  if (t.status != DebateStatus::Converged || !t.winner || !t.t_conv) {
    throw std::invalid_argument("only converged transcripts yield outcome records");
  }
  return stats::OutcomeRecord{t.config.model_tag, t.config.level, *t.t_conv, *t.winner,
                              t.config.starter,   t.config.toxic_side, t.config.topic.id};
}

LoadedOutcomes load_outcomes(const RunStore& store) {
  LoadedOutcomes out;
  std::set<std::uint64_t> seen;
  for (const auto& rec : store.read_transcripts()) {
    seen.insert(rec.trial_index);
    const Transcript& t = rec.transcript;
    auto& counts = out.counts[t.config.model_tag][t.config.level];
    switch (t.status) {
      case DebateStatus::Converged:
        ++counts.converged;
        out.records.push_back(to_outcome(t));
        break;
      case DebateStatus::Capped: ++counts.capped; break;
      case DebateStatus::Refused: ++counts.refused; break;
    }
  }
  std::set<std::uint64_t> aborted;
  for (const auto& rec : store.read_aborted()) {
    if (seen.contains(rec.trial_index) || !aborted.insert(rec.trial_index).second) continue;
    ++out.counts[rec.model_tag][rec.condition].aborted;
  }
  for (const auto& [model, by_level] : out.counts) {
    for (const auto& [level, c] : by_level) {
      out.totals.converged += c.converged;
      out.totals.capped += c.capped;
      out.totals.refused += c.refused;
      out.totals.aborted += c.aborted;
    }
  }
  return out;
}

nlohmann::json summary_json(const LoadedOutcomes& loaded, const std::string& fingerprint) {
  const auto counts_json = [](const OutcomeCounts& c) {
    return nlohmann::json{{"converged", c.converged},
                          {"capped", c.capped},
                          {"refused", c.refused},
                          {"aborted", c.aborted}};
  };
  nlohmann::json by_model = nlohmann::json::object();
  for (const auto& [model, by_level] : loaded.counts) {
    nlohmann::json levels = nlohmann::json::object();
    for (const auto& [level, c] : by_level) levels[std::string(to_string(level))] = counts_json(c);
    by_model[model] = std::move(levels);
  }
  return {{"fingerprint", fingerprint},
          {"totals", counts_json(loaded.totals)},
          {"by_model", std::move(by_model)}};
}

}  // namespace debatesim
