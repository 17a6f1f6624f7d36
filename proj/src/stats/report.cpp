#include "debatesim/stats/report.hpp"

namespace debatesim::stats {

StatReport build_report(std::span<const OutcomeRecord> records, const ReportOptions& options) {
  StatReport report;
  report.options = options;
  report.latency = summarize_latency(records);
  report.tables = win_rate_tables(records, options.t_test);
  report.histograms = histogram(records, options.truncate_at, options.levels);
  report.max_rounds = max_rounds_by_topic(records);
  report.conventions = {
      {"binomial_two_sided", "small p-values summation, relative tie slack 1e-7"},
      {"t_test", options.t_test == TTestFlavor::Welch ? "welch" : "student"},
      {"t_test_samples", "per-debate win indicators, toxic agent vs non-toxic opponent"},
      {"anova_samples", "per-debate Pro win indicators grouped by toxicity level"},
      {"variance", "unbiased (n-1)"},
      {"histogram_truncate_at", std::to_string(options.truncate_at)},
  };
  return report;
}

}  // namespace debatesim::stats
