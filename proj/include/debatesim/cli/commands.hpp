#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "debatesim/cli/config.hpp"
#include "debatesim/montecarlo/scheduler.hpp"
#include "debatesim/persistence/run_store.hpp"
#include "debatesim/stats/report.hpp"

namespace debatesim::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kRuntimeFailure = 2 };

enum class Verbosity { Quiet, Normal, Verbose };

struct Streams {
  std::ostream& out;
  std::ostream& err;
  Verbosity verbosity = Verbosity::Normal;
};

enum class Subcommand { Validate, Run, Resume, Analyze, Report };

struct Invocation {
  Subcommand subcommand = Subcommand::Validate;
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> store;
  Overrides overrides;
  Verbosity verbosity = Verbosity::Normal;
};

// Loads the config (when given), applies overrides and runs the subcommand.
// Every failure becomes an exit code plus a message on the error stream.
int dispatch(const Invocation& invocation, std::ostream& out, std::ostream& err);

// The subcommands. Exceptions propagate; dispatch maps them to exit codes.
int cmd_validate(const RunConfig& config, Streams io);
int cmd_run(const RunConfig& config, const std::filesystem::path& store, Streams io);
int cmd_resume(const RunConfig& config, const std::filesystem::path& store, Streams io);
int cmd_analyze(const std::filesystem::path& store, const StatsConventions& conventions,
                Streams io);
int cmd_report(const std::filesystem::path& store, const StatsConventions& conventions,
               Streams io);

// Report over a store's converged debates, with histograms for every level
// in the store's plan.
stats::StatReport report_for_store(const RunStore& store, const StatsConventions& conventions);

std::string render_plan(const ExperimentPlan& plan);
std::string render_run_summary(const RunSummary& summary);
std::string render_counts(const LoadedOutcomes& loaded);
// Latency, starter, toxic-side and ANOVA tables plus yes/no decisions at
// the report's alpha.
std::string render_analysis(const stats::StatReport& report);

}  // namespace debatesim::cli
