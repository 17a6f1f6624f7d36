#include "debatesim/agents/factory.hpp"

#include "debatesim/agents/scripted.hpp"

namespace debatesim {

namespace {

class SyntheticFactory final : public AgentFactory {
 public:
  SyntheticFactory(SyntheticAgentParams params, PromptKit prompts, ConvergenceProtocol protocol)
      : params_(params), prompts_(std::move(prompts)), protocol_(std::move(protocol)) {
    params_.validate();
  }

  AgentPair make(const DebateConfig& config, std::uint64_t) const override {
    auto [pro_text, con_text] = render_pair(prompts_, protocol_, config);
    return {std::make_unique<SyntheticAgent>(Side::Pro, params_, config,
                                             protocol_.concession_marker, std::move(pro_text)),
            std::make_unique<SyntheticAgent>(Side::Con, params_, config,
                                             protocol_.concession_marker, std::move(con_text))};
  }

 private:
  SyntheticAgentParams params_;
  PromptKit prompts_;
  ConvergenceProtocol protocol_;
};

class ScriptedFactory final : public AgentFactory {
 public:
  ScriptedFactory(ScriptedLines lines, PromptKit prompts, ConvergenceProtocol protocol)
      : lines_(std::move(lines)), prompts_(std::move(prompts)), protocol_(std::move(protocol)) {}

  AgentPair make(const DebateConfig& config, std::uint64_t) const override {
    auto [pro_text, con_text] = render_pair(prompts_, protocol_, config);
    return {std::make_unique<ScriptedAgent>(Side::Pro, lines_.pro, std::move(pro_text)),
            std::make_unique<ScriptedAgent>(Side::Con, lines_.con, std::move(con_text))};
  }

 private:
  ScriptedLines lines_;
  PromptKit prompts_;
  ConvergenceProtocol protocol_;
};

class EndpointFactory final : public AgentFactory {
 public:
  EndpointFactory(const EndpointSettings& settings, PromptKit prompts, ConvergenceProtocol protocol)
      : client_(std::make_shared<const EndpointClient>(settings)),
        prompts_(std::move(prompts)),
        protocol_(std::move(protocol)) {}

  AgentPair make(const DebateConfig& config, std::uint64_t) const override {
    auto [pro_text, con_text] = render_pair(prompts_, protocol_, config);
    return {std::make_unique<EndpointAgent>(Side::Pro, std::move(pro_text), client_),
            std::make_unique<EndpointAgent>(Side::Con, std::move(con_text), client_)};
  }

 private:
  std::shared_ptr<const EndpointClient> client_;
  PromptKit prompts_;
  ConvergenceProtocol protocol_;
};

nlohmann::json synthetic_json(const SyntheticAgentParams& p) {
  return {{"base_hazard", p.base_hazard},
          {"slowdown", p.slowdown},
          {"anchoring_bonus", p.anchoring_bonus},
          {"toxic_persuasion_bonus", p.toxic_persuasion_bonus},
          {"hazard_floor", p.hazard_floor},
          {"hazard_ceiling", p.hazard_ceiling},
          {"first_opportunity_turn", p.first_opportunity_turn},
          {"order_neutral", p.order_neutral},
          {"refusal_probability", p.refusal_probability}};
}

}  // namespace

nlohmann::json to_fingerprint_json(const BackendSpec& spec) {
  nlohmann::json out{{"kind", std::string(to_string(spec.kind))}};
  switch (spec.kind) {
    case BackendKind::Synthetic:
      out["synthetic"] = synthetic_json(spec.synthetic);
      break;
    case BackendKind::Scripted:
      out["scripted"] = {{"pro", spec.scripted.pro}, {"con", spec.scripted.con}};
      break;
    case BackendKind::Endpoint: {
      const auto& e = spec.endpoint;
      nlohmann::json ep{{"base_url", e.base_url}, {"path", e.path}, {"model", e.model},
                        {"opening_prompt", e.opening_prompt}};
      if (e.temperature) ep["temperature"] = *e.temperature;
      if (e.top_p) ep["top_p"] = *e.top_p;
      if (e.max_tokens) ep["max_tokens"] = *e.max_tokens;
      out["endpoint"] = std::move(ep);
      break;
    }
  }
  return out;
}

std::pair<std::string, std::string> render_pair(const PromptKit& prompts,
                                                const ConvergenceProtocol& protocol,
                                                const DebateConfig& config) {
  const auto render = [&](Side side) {
    const bool toxic = config.toxic_side && *config.toxic_side == side;
    return render_instructions(prompts, config.topic, side, config.level, toxic, protocol);
  };
  return {render(Side::Pro), render(Side::Con)};
}

std::unique_ptr<AgentFactory> make_agent_factory(const BackendSpec& spec, PromptKit prompts,
                                                 ConvergenceProtocol protocol) {
  validate(prompts);
  switch (spec.kind) {
    case BackendKind::Synthetic:
      return std::make_unique<SyntheticFactory>(spec.synthetic, std::move(prompts),
                                                std::move(protocol));
    case BackendKind::Scripted:
      return std::make_unique<ScriptedFactory>(spec.scripted, std::move(prompts),
                                               std::move(protocol));
    case BackendKind::Endpoint:
      return std::make_unique<EndpointFactory>(spec.endpoint, std::move(prompts),
                                               std::move(protocol));
  }
  throw InvalidConfig("unknown backend kind");
}

}  // namespace debatesim
