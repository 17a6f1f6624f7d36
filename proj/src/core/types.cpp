#include "debatesim/core/types.hpp"

#include <algorithm>
#include <cctype>

namespace debatesim {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const Enum (&values)[N], const char* what) {
  for (Enum v : values) {
    if (iequals(text, to_string(v))) return v;
  }
  throw std::invalid_argument(std::string("unknown ") + what + ": '" + std::string(text) + "'");
}

}  // namespace

std::string_view to_string(Side s) { return s == Side::Pro ? "Pro" : "Con"; }

std::string_view to_string(ToxicityLevel level) {
  switch (level) {
    case ToxicityLevel::No: return "No";
    case ToxicityLevel::Mild: return "Mild";
    case ToxicityLevel::Moderate: return "Moderate";
    case ToxicityLevel::Heavy: return "Heavy";
  }
  return "?";
}

std::string_view to_string(TurnKind kind) {
  switch (kind) {
    case TurnKind::Argument: return "argument";
    case TurnKind::Concession: return "concession";
    case TurnKind::Refusal: return "refusal";
  }
  return "?";
}

std::string_view to_string(DebateStatus status) {
  switch (status) {
    case DebateStatus::Converged: return "converged";
    case DebateStatus::Capped: return "capped";
    case DebateStatus::Refused: return "refused";
  }
  return "?";
}

Side parse_side(std::string_view text) {
  static constexpr Side kSides[] = {Side::Pro, Side::Con};
  return parse_enum(text, kSides, "side");
}

ToxicityLevel parse_level(std::string_view text) {
  return parse_enum(text, kAllLevels, "toxicity level");
}

TurnKind parse_turn_kind(std::string_view text) {
  static constexpr TurnKind kKinds[] = {TurnKind::Argument, TurnKind::Concession,
                                        TurnKind::Refusal};
  return parse_enum(text, kKinds, "turn kind");
}

DebateStatus parse_status(std::string_view text) {
  static constexpr DebateStatus kStatuses[] = {DebateStatus::Converged, DebateStatus::Capped,
                                               DebateStatus::Refused};
  return parse_enum(text, kStatuses, "debate status");
}

void validate(const DebateConfig& config) {
  if (config.topic.proposition.empty()) throw InvalidConfig("topic proposition is empty");
  if ((config.level == ToxicityLevel::No) != !config.toxic_side.has_value()) {
    throw InvalidConfig("toxic side must be present exactly when the level is not No");
  }
  if (config.min_rounds < 0) throw InvalidConfig("min_rounds must be non-negative");
  if (config.round_cap < 2) throw InvalidConfig("round_cap must be at least 2");
  if (config.round_cap < config.min_rounds + 2) {
    throw InvalidConfig("round_cap must be at least min_rounds + 2");
  }
}

void check_invariants(const Transcript& t) {
  const auto fail = [](const std::string& why) { throw std::logic_error("transcript: " + why); };
  const auto& turns = t.turns;
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (turns[i].index != static_cast<int>(i) + 1) fail("turn indices are not consecutive");
    const Side expected = i % 2 == 0 ? t.config.starter : opposite(t.config.starter);
    if (turns[i].side != expected) fail("sides do not alternate from the starter");
    if (turns[i].kind != TurnKind::Argument && i + 1 != turns.size()) {
      fail("terminal turn is not last");
    }
  }
  const bool last_concession = !turns.empty() && turns.back().kind == TurnKind::Concession;
  const bool last_refusal = !turns.empty() && turns.back().kind == TurnKind::Refusal;
  switch (t.status) {
    case DebateStatus::Converged:
      if (!last_concession) fail("converged without a concession");
      if (!t.winner || *t.winner != opposite(turns.back().side)) fail("winner mismatch");
      if (!t.t_conv || *t.t_conv != static_cast<int>(turns.size())) fail("t_conv mismatch");
      if (*t.t_conv < t.config.min_rounds) fail("concession accepted before min_rounds");
      break;
    case DebateStatus::Refused:
      if (!last_refusal) fail("refused without a refusal turn");
      if (t.winner || t.t_conv) fail("refused transcript carries an outcome");
      break;
    case DebateStatus::Capped:
      if (last_concession || last_refusal) fail("capped transcript ends in a terminal turn");
      if (static_cast<int>(turns.size()) != t.config.round_cap) fail("capped below round_cap");
      if (t.winner || t.t_conv) fail("capped transcript carries an outcome");
      break;
  }
}

}  // namespace debatesim
