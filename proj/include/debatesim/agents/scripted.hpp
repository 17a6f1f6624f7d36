#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "debatesim/core/debate.hpp"

namespace debatesim {

// The scripted agent ran out of lines: the test that built it is wrong.
class ScriptExhausted : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Replays preloaded lines verbatim, one per call. Ignores history and rng.
class ScriptedAgent final : public Agent {
 public:
  ScriptedAgent(Side side, std::vector<std::string> lines, std::string instructions = {});

  BackendKind backend() const override { return BackendKind::Scripted; }
  std::string next_message(std::span<const Turn> history, Rng& rng) override;

  std::size_t remaining() const { return lines_.size() - next_; }

 private:
  std::vector<std::string> lines_;
  std::size_t next_ = 0;
};

}  // namespace debatesim
