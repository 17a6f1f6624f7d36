#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "debatesim/core/types.hpp"

namespace debatesim {

// How a debate ends: an agent emits the concession marker when persuaded, or
// the backend declines with text matching one of the refusal patterns.
struct ConvergenceProtocol {
  std::string concession_marker = "[CONCEDE]";
  std::vector<std::string> refusal_patterns = default_refusal_patterns();

  static std::vector<std::string> default_refusal_patterns();
};

// Lowercases ASCII, collapses whitespace runs to one space and trims.
std::string normalize_text(std::string_view text);

// Concession iff the normalized text contains the normalized marker; Refusal
// iff it contains any normalized refusal pattern; Argument otherwise.
// Concession wins when both match.
TurnKind classify_turn(std::string_view text, const ConvergenceProtocol& protocol);

}  // namespace debatesim
