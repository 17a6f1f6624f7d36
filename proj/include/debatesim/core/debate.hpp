#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include "debatesim/core/protocol.hpp"
#include "debatesim/core/random.hpp"
#include "debatesim/core/types.hpp"

namespace debatesim {

enum class BackendKind { Endpoint, Scripted, Synthetic };

std::string_view to_string(BackendKind kind);
BackendKind parse_backend_kind(std::string_view text);

// An agent call failed for good (transport exhausted its retries, malformed
// response, ...). The debate is aborted.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One debater bound to a side and a rendered instruction bundle.
class Agent {
 public:
  Agent(Side side, std::string instructions)
      : side_(side), instructions_(std::move(instructions)) {}
  virtual ~Agent() = default;

  Agent(const Agent&) = delete;
  Agent& operator=(const Agent&) = delete;

  Side side() const { return side_; }
  const std::string& instructions() const { return instructions_; }

  virtual BackendKind backend() const = 0;

  // Produces the agent's next message given all prior turns of the debate.
  virtual std::string next_message(std::span<const Turn> history, Rng& rng) = 0;

  // Backend and sampling settings to record with the transcript.
  virtual std::map<std::string, std::string> metadata() const { return {}; }

 private:
  Side side_;
  std::string instructions_;
};

// Runs one debate to its first concession (accepted only once min_rounds
// turns exist), first refusal, or round_cap. Throws InvalidConfig before any
// agent call; BackendError from an agent propagates.
Transcript run_debate(const DebateConfig& config, Agent& pro, Agent& con,
                      const ConvergenceProtocol& protocol = {});

}  // namespace debatesim
