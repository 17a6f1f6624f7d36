#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace debatesim {

enum class Side { Pro, Con };

// Ordered: No < Mild < Moderate < Heavy. Used as a grouping key everywhere.
enum class ToxicityLevel { No = 0, Mild = 1, Moderate = 2, Heavy = 3 };

enum class TurnKind { Argument, Concession, Refusal };

enum class DebateStatus { Converged, Capped, Refused };

inline constexpr Side opposite(Side s) { return s == Side::Pro ? Side::Con : Side::Pro; }

std::string_view to_string(Side s);
std::string_view to_string(ToxicityLevel level);
std::string_view to_string(TurnKind kind);
std::string_view to_string(DebateStatus status);

// Parsers accept the canonical spelling case-insensitively and throw
// std::invalid_argument otherwise.
Side parse_side(std::string_view text);
ToxicityLevel parse_level(std::string_view text);
TurnKind parse_turn_kind(std::string_view text);
DebateStatus parse_status(std::string_view text);

inline constexpr ToxicityLevel kAllLevels[] = {ToxicityLevel::No, ToxicityLevel::Mild,
                                               ToxicityLevel::Moderate, ToxicityLevel::Heavy};

struct Topic {
  std::string id;
  std::string domain;
  std::string proposition;

  friend bool operator==(const Topic&, const Topic&) = default;
};

struct DebateConfig {
  Topic topic;
  Side starter = Side::Pro;
  std::optional<Side> toxic_side;
  ToxicityLevel level = ToxicityLevel::No;
  int round_cap = 60;
  int min_rounds = 2;
  std::uint64_t seed = 0;
  std::string model_tag;

  friend bool operator==(const DebateConfig&, const DebateConfig&) = default;
};

struct Turn {
  int index = 0;  // 1-based
  Side side = Side::Pro;
  std::string text;
  TurnKind kind = TurnKind::Argument;

  friend bool operator==(const Turn&, const Turn&) = default;
};

struct Transcript {
  DebateConfig config;
  std::vector<Turn> turns;
  DebateStatus status = DebateStatus::Capped;
  std::optional<Side> winner;
  std::optional<int> t_conv;
  // Backend and sampling metadata, recorded verbatim (e.g. temperature).
  std::map<std::string, std::string> metadata;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws InvalidConfig when the config violates its invariants.
void validate(const DebateConfig& config);

// Throws std::logic_error describing the first violated transcript invariant.
void check_invariants(const Transcript& transcript);

}  // namespace debatesim
