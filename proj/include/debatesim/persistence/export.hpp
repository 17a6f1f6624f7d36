#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "debatesim/stats/report.hpp"

namespace debatesim {

// Fixed-point with `decimals` digits; "inf"/"-inf"/"nan" for non-finite values.
std::string format_fixed(double value, int decimals);

// p < 1e-4 in short scientific form ("3.2e-7"), otherwise four decimals.
std::string format_p_value(double p);

// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(const std::string& text);

// CSV bodies, header line first. Same report, same bytes.
std::string latency_csv(const stats::StatReport& report);
std::string starter_csv(const stats::StatReport& report);
std::string toxic_csv(const stats::StatReport& report);
std::string anova_csv(const stats::StatReport& report);
std::string histogram_csv(const stats::StatReport& report);
std::string max_rounds_csv(const stats::StatReport& report);
std::string conventions_csv(const stats::StatReport& report);

// Writes latency.csv, starter.csv, toxic.csv, anova.csv, histogram.csv,
// max_rounds.csv and conventions.csv into `dir`. Throws StorageFailure.
std::vector<std::filesystem::path> export_report(const stats::StatReport& report,
                                                 const std::filesystem::path& dir);

}  // namespace debatesim
