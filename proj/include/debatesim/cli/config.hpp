#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "debatesim/montecarlo/plan.hpp"
#include "debatesim/stats/report.hpp"

namespace debatesim {

// Unreadable or malformed configuration. Maps to exit status 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StatsConventions {
  int truncate_at = 23;
  stats::TTestFlavor t_test = stats::TTestFlavor::Welch;
  double alpha = 1e-4;
};

struct RunConfig {
  ExperimentPlan plan;
  StatsConventions stats;
};

// Config file, JSON with five optional sections:
//
//   plan      n_per_condition, levels, master_seed, concurrency_limit,
//             round_cap, min_rounds, model_tag, trial_retry_limit,
//             corpus (path to a topics file; bundled topics when absent)
//   backend   kind, synthetic{...}, endpoint{...}, scripted{pro, con}
//   prompts   directives_dir, layout{persona_slot, stance_slot, ...}
//   protocol  concession_marker, refusal_patterns
//   stats     truncate_at, t_test ("welch" | "student"), alpha
//
// Unknown keys are errors. Relative paths resolve against the config file's
// directory. The endpoint token is read from the variable named by
// backend.endpoint.token_env and may not appear in the file.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

// Command-line values that shadow the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<int> concurrency;
  std::optional<BackendKind> backend;
  std::optional<std::vector<ToxicityLevel>> levels;
  std::optional<int> truncate_at;
};

void apply_overrides(RunConfig& config, const Overrides& overrides);

// "No,Heavy" or "all".
std::vector<ToxicityLevel> parse_levels(const std::string& text);

}  // namespace debatesim
