#include <doctest.h>

#include <chrono>
#include <fstream>

#include "debatesim/agents/factory.hpp"
#include "debatesim/persistence/export.hpp"
#include "debatesim/persistence/records.hpp"
#include "debatesim/persistence/run_store.hpp"
#include "temp_dir.hpp"

using namespace debatesim;
using debatesim::testing::slurp;
using debatesim::testing::TempDir;

namespace {

Transcript converged(int t_conv, ToxicityLevel level = ToxicityLevel::No) {
  Transcript t;
  t.config.topic = Topic{"culture-01", "culture", "Museums should be free, \"always\""};
  t.config.level = level;
  if (level != ToxicityLevel::No) t.config.toxic_side = Side::Con;
  t.config.seed = 99;
  t.config.model_tag = "m";
  for (int i = 1; i <= t_conv; ++i) {
    const Side s = i % 2 ? Side::Pro : Side::Con;
    t.turns.push_back({i, s, i == t_conv ? "ok [CONCEDE]" : "arg\n" + std::to_string(i),
                       i == t_conv ? TurnKind::Concession : TurnKind::Argument});
  }
  t.status = DebateStatus::Converged;
  t.winner = opposite(t.turns.back().side);
  t.t_conv = t_conv;
  t.metadata = {{"backend", "scripted"}};
  return t;
}

Transcript refused() {
  Transcript t = converged(2);
  t.turns[1].text = "I must decline.";
  t.turns[1].kind = TurnKind::Refusal;
  t.status = DebateStatus::Refused;
  t.winner.reset();
  t.t_conv.reset();
  return t;
}

RunStore new_store(const TempDir& dir, const std::string& fp = "fp-1") {
  return RunStore::create(dir.path(), fp, {{"n", 1}}, RunStore::Durability::Flush);
}

}  // namespace

TEST_SUITE("persistence") {

TEST_CASE("record JSON round-trip") {
  const TrialRecord r{17, converged(8, ToxicityLevel::Moderate)};
  CHECK(trial_from_json(to_json(r)) == r);
  const std::string line = encode_line(to_json(r));
  CHECK(line.find('\n') == std::string::npos);
  CHECK(trial_from_json(nlohmann::json::parse(line)) == r);
  CHECK(encode_line(to_json(r)) == line);

  const AbortedRecord a{3, ToxicityLevel::Heavy, "m", "endpoint failed"};
  CHECK(aborted_from_json(to_json(a)) == a);
}

TEST_CASE("append then read back") {
  TempDir dir;
  {
    RunStore store = new_store(dir);
    store.append({0, converged(6)});
    store.append({1, refused()});
    CHECK(store.has_transcript(1));
    CHECK_FALSE(store.has_transcript(2));
  }
  const RunStore store = RunStore::open(dir.path());
  const auto records = store.read_transcripts();
  REQUIRE(records.size() == 2);
  CHECK(records[0] == TrialRecord{0, converged(6)});
  CHECK(records[1] == TrialRecord{1, refused()});
  CHECK(store.fingerprint() == "fp-1");
  CHECK(store.plan_document() == nlohmann::json{{"n", 1}});
}

TEST_CASE("duplicate trial index") {
  TempDir dir;
  RunStore store = new_store(dir);
  store.append({4, converged(6)});
  CHECK_THROWS_AS(store.append({4, converged(7)}), DuplicateTrial);
  RunStore reopened = RunStore::open(dir.path());
  CHECK_THROWS_AS(reopened.append({4, converged(7)}), DuplicateTrial);
}

TEST_CASE("plan fingerprint guards the store") {
  TempDir dir;
  { new_store(dir, "aaa"); }
  CHECK_NOTHROW(new_store(dir, "aaa"));
  CHECK_THROWS_AS(new_store(dir, "bbb"), PlanMismatch);
  TempDir empty;
  CHECK_THROWS_AS(RunStore::open(empty / "nothing"), StorageFailure);
}

TEST_CASE("truncated final line is quarantined") {
  TempDir dir;
  {
    RunStore store = new_store(dir);
    for (std::uint64_t i = 0; i < 3; ++i) store.append({i, converged(6 + static_cast<int>(i))});
  }
  const auto log = dir / "transcripts.jsonl";
  const std::string whole = slurp(log);
  const std::string partial = encode_line(to_json(TrialRecord{3, converged(9)})).substr(0, 40);
  {
    std::ofstream out(log, std::ios::app | std::ios::binary);
    out << partial;
  }
  RunStore store = RunStore::open(dir.path());
  CHECK(store.quarantined_lines() == 1);
  CHECK(slurp(log) == whole);
  CHECK(slurp(dir / "quarantine.jsonl") == partial + "\n");
  CHECK(store.read_transcripts().size() == 3);
  CHECK_FALSE(store.has_transcript(3));
  // the trial can be written again after recovery
  store.append({3, converged(9)});
  CHECK(store.read_transcripts().size() == 4);
}

TEST_CASE("outcome loading excludes non-converged debates") {
  SUBCASE("7 converged + 3 refused") {
    TempDir dir;
    RunStore store = new_store(dir);
    for (std::uint64_t i = 0; i < 10; ++i) {
      store.append({i, i < 7 ? converged(6 + static_cast<int>(i)) : refused()});
    }
    const auto loaded = load_outcomes(store);
    CHECK(loaded.records.size() == 7);
    CHECK(loaded.totals.refused == 3);
    CHECK(loaded.totals.converged == 7);
    CHECK(loaded.counts.at("m").at(ToxicityLevel::No).refused == 3);
  }
  SUBCASE("empty store") {
    TempDir dir;
    const RunStore store = new_store(dir);
    const auto loaded = load_outcomes(store);
    CHECK(loaded.records.empty());
    CHECK(loaded.totals == OutcomeCounts{});
  }
  SUBCASE("aborted trials count once, and not after a later success") {
    TempDir dir;
    RunStore store = new_store(dir);
    store.append_aborted({0, ToxicityLevel::No, "m", "boom"});
    store.append_aborted({1, ToxicityLevel::No, "m", "boom"});
    store.append_aborted({1, ToxicityLevel::No, "m", "boom again"});
    store.append({0, converged(6)});
    const auto loaded = load_outcomes(store);
    CHECK(loaded.totals.aborted == 1);
    CHECK(loaded.totals.converged == 1);
    const auto summary = summary_json(loaded, store.fingerprint());
    CHECK(summary["totals"]["aborted"] == 1);
    CHECK(summary["by_model"]["m"]["No"]["converged"] == 1);
  }
}

TEST_CASE("1000-transcript store loads in under 2 seconds") {
  TempDir dir;
  {
    RunStore store = new_store(dir);
    for (std::uint64_t i = 0; i < 1000; ++i) {
      store.append({i, converged(6 + static_cast<int>(i % 30), kAllLevels[i % 4])});
    }
  }
  const auto start = std::chrono::steady_clock::now();
  const RunStore store = RunStore::open(dir.path());
  const auto loaded = load_outcomes(store);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(loaded.records.size() == 1000);
  MESSAGE("load took " << secs << " s");
  CHECK(secs < 2.0);
}

TEST_CASE("export formatting") {
  CHECK(format_fixed(11.8249, 2) == "11.82");
  CHECK(format_p_value(3.2e-7) == "3.2e-7");
  CHECK(format_p_value(0.0213116) == "0.0213");
  CHECK(format_p_value(0.0) == "0");
  CHECK(format_p_value(1.0) == "1.0000");
  CHECK(format_p_value(5.5e-11) == "5.5e-11");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");

  stats::StatReport report;
  report.latency.rows.push_back({"LLaMA", ToxicityLevel::No, 232, 9.45, 7.48, std::nullopt});
  report.latency.rows.push_back({"LLaMA", ToxicityLevel::Moderate, 231, 11.82, 9.02, 25.13});
  const std::string csv = latency_csv(report);
  CHECK(csv ==
        "model,condition,n,mean_tconv,var_tconv,pct_increase\n"
        "LLaMA,No,232,9.45,7.48,\n"
        "LLaMA,Moderate,231,11.82,9.02,25.13\n");
}

TEST_CASE("empty report exports header-only files") {
  TempDir dir;
  const stats::StatReport report;
  const auto written = export_report(report, dir / "exports");
  CHECK(written.size() == 7);
  CHECK(slurp(dir / "exports/starter.csv") == "model,starter,win_rate,p_value\n");
  CHECK(slurp(dir / "exports/histogram.csv") == "model,condition,bin,count\n");
  CHECK(slurp(dir / "exports/anova.csv") == "model,level,pro_win_rate,con_win_rate,F,p_value\n");
}

TEST_CASE("histogram export carries the overflow bin") {
  std::vector<stats::OutcomeRecord> rs{{"m", ToxicityLevel::No, 5, Side::Pro, Side::Pro, {}, "t"},
                                       {"m", ToxicityLevel::No, 5, Side::Pro, Side::Pro, {}, "t"},
                                       {"m", ToxicityLevel::No, 24, Side::Pro, Side::Pro, {}, "t"}};
  const auto report = stats::build_report(rs);
  const std::string csv = histogram_csv(report);
  CHECK(csv.find("m,No,5,2\n") != std::string::npos);
  CHECK(csv.find("m,No,>23,1\n") != std::string::npos);
  CHECK(csv.find("m,No,1,0\n") != std::string::npos);
}

}  // TEST_SUITE
