#include <iostream>

#include <CLI11.hpp>

#include "debatesim/cli/commands.hpp"

using namespace debatesim;

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo harness for toxicity-conditioned two-agent debates"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path, store_path, backend, levels;
  std::uint64_t seed = 0;
  int n = 0, concurrency = 0, truncate_at = 23;
  bool quiet = false, verbose = false;

  auto* config_opt = app.add_option("--config", config_path, "JSON config file");
  auto* store_opt = app.add_option("--store", store_path, "run store directory");
  auto* seed_opt = app.add_option("--seed", seed, "master seed override");
  auto* n_opt = app.add_option("--n", n, "trials per condition override")->check(CLI::PositiveNumber);
  auto* conc_opt = app.add_option("--concurrency", concurrency, "worker limit override")
                       ->check(CLI::PositiveNumber);
  auto* backend_opt = app.add_option("--backend", backend, "endpoint|scripted|synthetic")
                          ->check(CLI::IsMember({"endpoint", "scripted", "synthetic"}));
  auto* levels_opt = app.add_option("--levels", levels, "comma-separated levels, or all");
  auto* trunc_opt = app.add_option("--truncate-at", truncate_at, "histogram truncation (default 23)")
                        ->check(CLI::PositiveNumber);
  auto* quiet_flag = app.add_flag("-q,--quiet", quiet, "errors and requested output only");
  app.add_flag("-v,--verbose", verbose, "one line per committed trial")->excludes(quiet_flag);

  app.add_subcommand("validate", "check the plan and prompt templates, print the resolved plan");
  app.add_subcommand("run", "execute the plan into a fresh store");
  app.add_subcommand("resume", "complete a partial store of the same plan");
  app.add_subcommand("analyze", "print latency and win-rate tables for a store");
  app.add_subcommand("report", "write CSV exports and histogram data for a store");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsageError;
  }

  cli::Invocation inv;
  const std::string sub = app.get_subcommands().front()->get_name();
  if (sub == "validate") inv.subcommand = cli::Subcommand::Validate;
  if (sub == "run") inv.subcommand = cli::Subcommand::Run;
  if (sub == "resume") inv.subcommand = cli::Subcommand::Resume;
  if (sub == "analyze") inv.subcommand = cli::Subcommand::Analyze;
  if (sub == "report") inv.subcommand = cli::Subcommand::Report;

  if (*config_opt) inv.config = config_path;
  if (*store_opt) inv.store = store_path;
  if (*seed_opt) inv.overrides.seed = seed;
  if (*n_opt) inv.overrides.n = n;
  if (*conc_opt) inv.overrides.concurrency = concurrency;
  if (*trunc_opt) inv.overrides.truncate_at = truncate_at;
  try {
    if (*backend_opt) inv.overrides.backend = parse_backend_kind(backend);
    if (*levels_opt) inv.overrides.levels = parse_levels(levels);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsageError;
  }
  inv.verbosity = quiet ? cli::Verbosity::Quiet
                        : verbose ? cli::Verbosity::Verbose : cli::Verbosity::Normal;

  return cli::dispatch(inv, std::cout, std::cerr);
}
