#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "debatesim/core/types.hpp"
#include "debatesim/stats/tests.hpp"

namespace debatesim::stats {

// Flattened analysis row for one converged debate.
struct OutcomeRecord {
  std::string model_tag;
  ToxicityLevel condition = ToxicityLevel::No;
  int t_conv = 1;
  Side winner = Side::Pro;
  Side starter = Side::Pro;
  std::optional<Side> toxic_side;
  std::string topic_id;
};

// Per (model, condition). Rows are ordered by model tag, then level.
struct LatencyRow {
  std::string model_tag;
  ToxicityLevel condition = ToxicityLevel::No;
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> pct_increase;  // vs the same model's No mean
};

struct LatencySummary {
  std::vector<LatencyRow> rows;
  // Models with no No-condition records; their pct_increase is omitted.
  std::vector<std::string> missing_baseline;
};

LatencySummary summarize_latency(std::span<const OutcomeRecord> records);

// 100 * (mean - baseline) / baseline
double percent_increase(double mean, double baseline);

struct StarterRow {
  std::string model_tag;
  Side starter = Side::Pro;
  std::size_t n = 0;
  std::size_t wins = 0;
  double win_rate = 0.0;
  TestResult test;  // exact binomial vs 0.5
};

struct ToxicRow {
  std::string model_tag;
  Side side = Side::Pro;  // the toxic side
  std::size_t n = 0;
  std::size_t wins = 0;
  double win_rate = 0.0;
  TestResult test;  // toxic vs non-toxic win indicators
};

struct AnovaLevelRow {
  ToxicityLevel level = ToxicityLevel::No;
  std::size_t n = 0;
  double pro_win_rate = 0.0;
  double con_win_rate = 0.0;
};

struct AnovaTable {
  std::string model_tag;
  std::vector<AnovaLevelRow> levels;
  // Absent when fewer than two levels have at least two debates.
  std::optional<TestResult> test;
};

enum class TTestFlavor { Welch, Student };

struct WinRateTables {
  std::vector<StarterRow> starter;
  std::vector<ToxicRow> toxic;
  std::vector<AnovaTable> anova;
};

WinRateTables win_rate_tables(std::span<const OutcomeRecord> records,
                              TTestFlavor flavor = TTestFlavor::Welch);

// Win indicators (1 = win) for the toxic agent and, in the same debates, its
// non-toxic opponent.
struct ToxicSamples {
  std::vector<double> toxic;
  std::vector<double> non_toxic;
};
ToxicSamples toxic_indicator_samples(std::span<const OutcomeRecord> records,
                                     const std::string& model_tag, Side toxic_side);

struct Histogram {
  std::string model_tag;
  ToxicityLevel condition = ToxicityLevel::No;
  int truncate_at = 23;
  std::vector<std::uint64_t> bins;  // bins[i] counts t_conv == i + 1
  std::uint64_t overflow = 0;       // t_conv > truncate_at

  std::uint64_t total() const;
};

// One histogram per model and level. `levels` adds all-zero histograms for
// levels without records; when empty, only observed levels appear.
std::vector<Histogram> histogram(std::span<const OutcomeRecord> records, int truncate_at,
                                 std::span<const ToxicityLevel> levels = {});

// Longest debate per (model, condition, topic).
struct MaxRoundsRow {
  std::string model_tag;
  ToxicityLevel condition = ToxicityLevel::No;
  std::string topic_id;
  int max_t_conv = 0;
  std::size_t debates = 0;
};

std::vector<MaxRoundsRow> max_rounds_by_topic(std::span<const OutcomeRecord> records);

}  // namespace debatesim::stats
