#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "debatesim/stats/analysis.hpp"

namespace debatesim::stats {

struct ReportOptions {
  int truncate_at = 23;
  TTestFlavor t_test = TTestFlavor::Welch;
  // Levels that get a histogram even when they have no records.
  std::vector<ToxicityLevel> levels;
  // Significance level for the printed decisions.
  double alpha = 1e-4;
};

// Every table and figure dataset computed from a set of converged debates.
struct StatReport {
  ReportOptions options;
  LatencySummary latency;
  WinRateTables tables;
  std::vector<Histogram> histograms;
  std::vector<MaxRoundsRow> max_rounds;
  // Statistical conventions in force, recorded with every export.
  std::map<std::string, std::string> conventions;
};

StatReport build_report(std::span<const OutcomeRecord> records, const ReportOptions& options = {});

}  // namespace debatesim::stats
