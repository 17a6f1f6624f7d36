#include "debatesim/core/debate.hpp"

#include <vector>

namespace debatesim {

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::Endpoint: return "endpoint";
    case BackendKind::Scripted: return "scripted";
    case BackendKind::Synthetic: return "synthetic";
  }
  return "?";
}

BackendKind parse_backend_kind(std::string_view text) {
  for (BackendKind k : {BackendKind::Endpoint, BackendKind::Scripted, BackendKind::Synthetic}) {
    if (text == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown backend '" + std::string(text) + "'");
}

Transcript run_debate(const DebateConfig& config, Agent& pro, Agent& con,
                      const ConvergenceProtocol& protocol) {
  validate(config);
  if (pro.side() != Side::Pro || con.side() != Side::Con) {
    throw InvalidConfig("agents are not bound to their debate sides");
  }

  Transcript transcript;
  transcript.config = config;
  transcript.status = DebateStatus::Capped;
  for (const Agent* agent : {static_cast<const Agent*>(&pro), static_cast<const Agent*>(&con)}) {
    for (auto& [key, value] : agent->metadata()) transcript.metadata.emplace(key, value);
  }
  transcript.metadata.emplace("backend", std::string(to_string(pro.backend())));

  Rng rng(config.seed);
  auto& turns = transcript.turns;
  turns.reserve(static_cast<std::size_t>(config.round_cap));

  for (int index = 1; index <= config.round_cap; ++index) {
    const Side speaker = index % 2 == 1 ? config.starter : opposite(config.starter);
    Agent& agent = speaker == Side::Pro ? pro : con;

    std::string text = agent.next_message(std::span<const Turn>(turns), rng);
    TurnKind kind = classify_turn(text, protocol);
    if (kind == TurnKind::Concession && index < config.min_rounds) kind = TurnKind::Argument;
    turns.push_back(Turn{index, speaker, std::move(text), kind});

    if (kind == TurnKind::Concession) {
      transcript.status = DebateStatus::Converged;
      transcript.winner = opposite(speaker);
      transcript.t_conv = index;
      break;
    }
    if (kind == TurnKind::Refusal) {
      transcript.status = DebateStatus::Refused;
      break;
    }
  }
  return transcript;
}

}  // namespace debatesim
