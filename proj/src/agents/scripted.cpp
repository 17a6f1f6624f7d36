#include "debatesim/agents/scripted.hpp"

namespace debatesim {

ScriptedAgent::ScriptedAgent(Side side, std::vector<std::string> lines, std::string instructions)
    : Agent(side, std::move(instructions)), lines_(std::move(lines)) {}

std::string ScriptedAgent::next_message(std::span<const Turn> /*history*/, Rng& /*rng*/) {
  if (next_ >= lines_.size()) {
    throw ScriptExhausted("scripted " + std::string(to_string(side())) + " agent has no line " +
                          std::to_string(next_ + 1));
  }
  return lines_[next_++];
}

}  // namespace debatesim
