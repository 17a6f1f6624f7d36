#include "debatesim/core/protocol.hpp"

#include <cctype>

namespace debatesim {

std::vector<std::string> ConvergenceProtocol::default_refusal_patterns() {
  return {
      "I cannot continue",
      "I can't continue",
      "I won't continue",
      "I am unable to continue",
      "I'm unable to continue",
      "I cannot participate",
      "I can't participate",
      "I must decline",
      "I cannot comply",
      "I can't comply",
      "I can't help with that",
      "I cannot help with that",
      "I will not engage",
      "I won't engage",
  };
}

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

TurnKind classify_turn(std::string_view text, const ConvergenceProtocol& protocol) {
  const std::string normalized = normalize_text(text);
  const std::string marker = normalize_text(protocol.concession_marker);
  if (!marker.empty() && normalized.find(marker) != std::string::npos) {
    return TurnKind::Concession;
  }
  for (const auto& pattern : protocol.refusal_patterns) {
    const std::string p = normalize_text(pattern);
    if (!p.empty() && normalized.find(p) != std::string::npos) return TurnKind::Refusal;
  }
  return TurnKind::Argument;
}

}  // namespace debatesim
