#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "debatesim/agents/endpoint.hpp"
#include "debatesim/agents/prompt.hpp"
#include "debatesim/agents/synthetic.hpp"
#include "debatesim/core/debate.hpp"

namespace debatesim {

struct ScriptedLines {
  std::vector<std::string> pro;
  std::vector<std::string> con;
};

// Which backend drives the agents, plus the settings of each kind.
struct BackendSpec {
  BackendKind kind = BackendKind::Synthetic;
  SyntheticAgentParams synthetic;
  EndpointSettings endpoint;
  ScriptedLines scripted;
};

// Settings that determine results, as JSON. Excludes secrets and transport
// tuning (timeouts, retries) which cannot change a completed transcript.
nlohmann::json to_fingerprint_json(const BackendSpec& spec);

struct AgentPair {
  std::unique_ptr<Agent> pro;
  std::unique_ptr<Agent> con;
};

// Builds the two agents of one trial. make() is called concurrently from
// scheduler workers and must be thread-safe.
class AgentFactory {
 public:
  virtual ~AgentFactory() = default;
  virtual AgentPair make(const DebateConfig& config, std::uint64_t trial_index) const = 0;
};

// Factory for the configured backend. Instruction bundles are rendered from
// `prompts`; the toxicity directive goes only to the agent on the toxic side.
std::unique_ptr<AgentFactory> make_agent_factory(const BackendSpec& spec, PromptKit prompts,
                                                 ConvergenceProtocol protocol);

// Renders both sides' instruction bundles for a debate.
std::pair<std::string, std::string> render_pair(const PromptKit& prompts,
                                                const ConvergenceProtocol& protocol,
                                                const DebateConfig& config);

}  // namespace debatesim
