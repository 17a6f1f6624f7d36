#include "debatesim/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "debatesim/agents/prompt.hpp"
#include "debatesim/persistence/export.hpp"

namespace debatesim::cli {

namespace fs = std::filesystem;

namespace {

std::string printf_string(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::string format_alpha(double alpha) {
  const double e = std::round(std::log10(alpha));
  if (std::abs(alpha - std::pow(10.0, e)) <= 1e-12 * alpha) {
    return "1e" + std::to_string(static_cast<int>(e));
  }
  return printf_string("%g", alpha);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

stats::ReportOptions report_options(const StatsConventions& c,
                                    std::vector<ToxicityLevel> levels) {
  stats::ReportOptions o;
  o.truncate_at = c.truncate_at;
  o.t_test = c.t_test;
  o.alpha = c.alpha;
  o.levels = std::move(levels);
  return o;
}

std::vector<ToxicityLevel> plan_levels(const RunStore& store) {
  std::vector<ToxicityLevel> out;
  const auto& doc = store.plan_document();
  if (doc.contains("levels")) {
    for (const auto& l : doc.at("levels")) out.push_back(parse_level(l.get<std::string>()));
  }
  return out;
}

RunOptions progress_options(Streams io) {
  RunOptions options;
  if (io.verbosity == Verbosity::Verbose) {
    options.on_commit = [&err = io.err](const TrialAssignment& t, const TrialOutcome& outcome) {
      err << "trial " << t.trial_index << " [" << to_string(t.condition) << ", " << t.topic.id
          << "] ";
      if (const auto* rec = std::get_if<TrialRecord>(&outcome)) {
        err << to_string(rec->transcript.status) << " after " << rec->transcript.turns.size()
            << " turns\n";
      } else {
        err << "aborted: " << std::get<AbortedRecord>(outcome).error << "\n";
      }
    };
  }
  return options;
}

void report_run(const RunSummary& summary, const RunStore& store, Streams io) {
  if (io.verbosity != Verbosity::Quiet) {
    io.out << render_run_summary(summary);
    io.out << "store: " << store.root().string() << " (plan " << store.fingerprint() << ")\n";
  }
  if (summary.aborted > 0) {
    io.err << "warning: " << summary.aborted
           << " trial(s) aborted on backend errors; resume retries them\n";
  }
}

}  // namespace

std::string render_plan(const ExperimentPlan& plan) {
  std::ostringstream os;
  os << "plan " << plan_fingerprint(plan) << "\n";
  os << "  model_tag          " << plan.model_tag << "\n";
  os << "  backend            " << to_string(plan.backend.kind) << "\n";
  os << "  n_per_condition    " << plan.n_per_condition << "\n";
  os << "  levels            ";
  for (ToxicityLevel l : plan.levels) os << " " << to_string(l);
  os << "\n";
  os << "  trials             " << plan.n_per_condition * plan.levels.size() << "\n";
  os << "  master_seed        " << plan.master_seed << "\n";
  os << "  concurrency_limit  " << plan.concurrency_limit << "\n";
  os << "  round_cap          " << plan.round_cap << "\n";
  os << "  min_rounds         " << plan.min_rounds << "\n";
  os << "  concession_marker  " << plan.protocol.concession_marker << "\n";
  if (plan.backend.kind == BackendKind::Synthetic) {
    const auto& s = plan.backend.synthetic;
    os << printf_string(
        "  synthetic          base_hazard=%g slowdown=[%g %g %g %g] anchoring_bonus=%g "
        "toxic_persuasion_bonus=%g first_opportunity_turn=%d refusal_probability=%g\n",
        s.base_hazard, s.slowdown[0], s.slowdown[1], s.slowdown[2], s.slowdown[3],
        s.anchoring_bonus, s.toxic_persuasion_bonus, s.first_opportunity_turn,
        s.refusal_probability);
  } else if (plan.backend.kind == BackendKind::Endpoint) {
    const auto& e = plan.backend.endpoint;
    os << "  endpoint           " << e.base_url << e.path << " model=" << e.model
       << " token=" << (e.token.empty() ? "unset" : "set") << " (" << e.token_env << ")\n";
  } else {
    os << "  scripted           pro=" << plan.backend.scripted.pro.size()
       << " lines, con=" << plan.backend.scripted.con.size() << " lines\n";
  }
  os << "  topics             " << plan.corpus.size() << "\n";
  for (const Topic& t : plan.corpus) {
    os << "    " << t.id << "  " << t.proposition << "\n";
  }
  return os.str();
}

std::string render_run_summary(const RunSummary& summary) {
  std::ostringstream os;
  os << printf_string("%-10s %8s %8s %10s %8s %8s %8s\n", "condition", "planned", "skipped",
                      "converged", "capped", "refused", "aborted");
  for (const auto& [level, c] : summary.by_condition) {
    os << printf_string("%-10s %8zu %8zu %10zu %8zu %8zu %8zu\n",
                        std::string(to_string(level)).c_str(), c.planned, c.skipped,
                        c.counts.converged, c.counts.capped, c.counts.refused, c.counts.aborted);
  }
  os << "executed " << summary.executed << ", skipped " << summary.skipped << ", aborted "
     << summary.aborted << "\n";
  return os.str();
}

std::string render_counts(const LoadedOutcomes& loaded) {
  std::ostringstream os;
  os << "Outcomes (only converged debates enter the statistics)\n";
  os << printf_string("%-16s %-10s %10s %8s %8s %8s\n", "model", "condition", "converged",
                      "capped", "refused", "aborted");
  for (const auto& [model, by_level] : loaded.counts) {
    for (const auto& [level, c] : by_level) {
      os << printf_string("%-16s %-10s %10zu %8zu %8zu %8zu\n", model.c_str(),
                          std::string(to_string(level)).c_str(), c.converged, c.capped,
                          c.refused, c.aborted);
    }
  }
  return os.str();
}

std::string render_analysis(const stats::StatReport& report) {
  const double alpha = report.options.alpha;
  const std::string a = format_alpha(alpha);
  std::ostringstream os;

  os << "Convergence latency by toxicity level\n";
  os << printf_string("%-16s %-10s %6s %10s %10s %12s\n", "model", "condition", "n", "mean_tconv",
                      "var_tconv", "pct_increase");
  for (const auto& r : report.latency.rows) {
    os << printf_string("%-16s %-10s %6zu %10s %10s %12s\n", r.model_tag.c_str(),
                        std::string(to_string(r.condition)).c_str(), r.n,
                        format_fixed(r.mean, 2).c_str(), format_fixed(r.variance, 2).c_str(),
                        r.pct_increase ? format_fixed(*r.pct_increase, 2).c_str() : "");
  }
  for (const auto& m : report.latency.missing_baseline) {
    os << "note: " << m << " has no No-toxicity debates; pct_increase left empty\n";
  }

  os << "\nStarter win rate (exact binomial test vs 0.5)\n";
  os << printf_string("%-16s %-8s %6s %9s %10s  %s\n", "model", "starter", "n", "win_rate",
                      "p_value", "decision");
  for (const auto& r : report.tables.starter) {
    os << printf_string("%-16s %-8s %6zu %9s %10s  starter advantage significant at α=%s: %s\n",
                        r.model_tag.c_str(), std::string(to_string(r.starter)).c_str(), r.n,
                        format_fixed(r.win_rate, 4).c_str(),
                        format_p_value(r.test.p_value).c_str(), a.c_str(),
                        yes_no(r.test.p_value < alpha).c_str());
  }

  os << "\nToxic agent win rate (two-sample t-test, toxic vs non-toxic)\n";
  os << printf_string("%-16s %-8s %6s %9s %10s  %s\n", "model", "toxic", "n", "win_rate",
                      "p_value", "decision");
  for (const auto& r : report.tables.toxic) {
    os << printf_string("%-16s %-8s %6zu %9s %10s  toxic advantage significant at α=%s: %s\n",
                        r.model_tag.c_str(), std::string(to_string(r.side)).c_str(), r.n,
                        format_fixed(r.win_rate, 4).c_str(),
                        format_p_value(r.test.p_value).c_str(), a.c_str(),
                        yes_no(r.test.p_value < alpha).c_str());
  }

  os << "\nPro/Con win rate by toxicity level (one-way ANOVA on Pro wins)\n";
  for (const auto& t : report.tables.anova) {
    os << printf_string("%-16s %-10s %6s %9s %9s\n", "model", "level", "n", "pro_win", "con_win");
    for (const auto& l : t.levels) {
      os << printf_string("%-16s %-10s %6zu %9s %9s\n", t.model_tag.c_str(),
                          std::string(to_string(l.level)).c_str(), l.n,
                          format_fixed(l.pro_win_rate, 4).c_str(),
                          format_fixed(l.con_win_rate, 4).c_str());
    }
    if (t.test) {
      os << printf_string("%-16s F(%g, %g) = %s, p = %s  level effect significant at α=%s: %s\n",
                          t.model_tag.c_str(), t.test->df.value_or(0.0), t.test->df2.value_or(0.0),
                          format_fixed(t.test->statistic, 2).c_str(),
                          format_p_value(t.test->p_value).c_str(), a.c_str(),
                          yes_no(t.test->p_value < alpha).c_str());
    } else {
      os << t.model_tag << ": ANOVA needs two levels with at least two debates\n";
    }
  }
  return os.str();
}

stats::StatReport report_for_store(const RunStore& store, const StatsConventions& conventions) {
  const LoadedOutcomes loaded = load_outcomes(store);
  return stats::build_report(loaded.records, report_options(conventions, plan_levels(store)));
}

int cmd_validate(const RunConfig& config, Streams io) {
  validate(config.plan);
  // Render one bundle per side so template errors surface here, not mid-run.
  if (!config.plan.corpus.empty()) {
    const auto trials = plan_trials(config.plan);
    for (const auto& t : trials) {
      render_pair(config.plan.prompts, config.plan.protocol, make_debate_config(config.plan, t));
      if (t.condition != ToxicityLevel::No) break;
    }
  }
  if (config.plan.backend.kind == BackendKind::Endpoint && config.plan.backend.endpoint.token.empty()) {
    io.err << "warning: " << config.plan.backend.endpoint.token_env
           << " is not set; requests will carry no auth token\n";
  }
  if (io.verbosity != Verbosity::Quiet) io.out << render_plan(config.plan);
  return kOk;
}

int cmd_run(const RunConfig& config, const fs::path& store_path, Streams io) {
  validate(config.plan);
  RunStore store =
      RunStore::create(store_path, plan_fingerprint(config.plan), plan_document(config.plan));
  const auto factory =
      make_agent_factory(config.plan.backend, config.plan.prompts, config.plan.protocol);
  const RunSummary summary = execute(config.plan, *factory, store, progress_options(io));
  report_run(summary, store, io);
  return kOk;
}

int cmd_resume(const RunConfig& config, const fs::path& store_path, Streams io) {
  validate(config.plan);
  RunStore store = RunStore::open(store_path);
  if (store.quarantined_lines() > 0 && io.verbosity != Verbosity::Quiet) {
    io.err << "recovered store: " << store.quarantined_lines()
           << " partial line(s) moved to " << store.quarantine_path().string() << "\n";
  }
  const auto factory =
      make_agent_factory(config.plan.backend, config.plan.prompts, config.plan.protocol);
  const RunSummary summary = resume(config.plan, *factory, store, progress_options(io));
  report_run(summary, store, io);
  return kOk;
}

int cmd_analyze(const fs::path& store_path, const StatsConventions& conventions, Streams io) {
  const RunStore store = RunStore::open(store_path);
  const LoadedOutcomes loaded = load_outcomes(store);
  const auto report =
      stats::build_report(loaded.records, report_options(conventions, plan_levels(store)));
  if (io.verbosity != Verbosity::Quiet) io.out << render_counts(loaded) << "\n";
  io.out << render_analysis(report);
  return kOk;
}

int cmd_report(const fs::path& store_path, const StatsConventions& conventions, Streams io) {
  const RunStore store = RunStore::open(store_path);
  const auto report = report_for_store(store, conventions);
  const auto written = export_report(report, store.exports_dir());
  store.write_summary(summary_json(load_outcomes(store), store.fingerprint()));
  if (io.verbosity != Verbosity::Quiet) {
    for (const auto& p : written) io.out << "wrote " << p.string() << "\n";
  }
  return kOk;
}

int dispatch(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const Streams io{out, err, inv.verbosity};
  const bool needs_config = inv.subcommand == Subcommand::Validate ||
                            inv.subcommand == Subcommand::Run ||
                            inv.subcommand == Subcommand::Resume;
  const bool needs_store = inv.subcommand != Subcommand::Validate;
  if (needs_config && !inv.config) {
    err << "error: --config is required for this subcommand\n";
    return kUsageError;
  }
  if (needs_store && !inv.store) {
    err << "error: --store is required for this subcommand\n";
    return kUsageError;
  }

  RunConfig config;
  try {
    if (inv.config) config = load_config(*inv.config);
    apply_overrides(config, inv.overrides);
    if (needs_config) validate(config.plan);
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    switch (inv.subcommand) {
      case Subcommand::Validate: return cmd_validate(config, io);
      case Subcommand::Run: return cmd_run(config, *inv.store, io);
      case Subcommand::Resume: return cmd_resume(config, *inv.store, io);
      case Subcommand::Analyze: return cmd_analyze(*inv.store, config.stats, io);
      case Subcommand::Report: return cmd_report(*inv.store, config.stats, io);
    }
  } catch (const PlanMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const StoreNotEmpty& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    // InvalidConfig, TemplateError
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kUsageError;
}

}  // namespace debatesim::cli
