#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "debatesim/core/debate.hpp"

namespace debatesim {

// Chat-completion style HTTP endpoint. Secrets come from the environment
// (token_env), never from the config file.
struct EndpointSettings {
  std::string base_url = "http://127.0.0.1:8080";
  std::string path = "/v1/chat/completions";
  std::string model;
  std::optional<double> temperature;
  std::optional<double> top_p;
  std::optional<int> max_tokens;
  std::string auth_header = "Authorization";
  std::string auth_prefix = "Bearer ";
  std::string token_env = "DEBATESIM_API_TOKEN";
  std::string token;  // resolved from token_env at load time
  int retry_limit = 3;
  std::chrono::milliseconds backoff_base{250};
  std::chrono::milliseconds timeout{60'000};
  // Sent as the first user message when the agent opens the debate.
  std::string opening_prompt = "Please open the debate with your first argument.";
};

// Request body for one agent call: a system message with the instruction
// bundle, then history mapped to user (opponent) / assistant (own) roles.
// Pure; identical inputs give identical payloads.
nlohmann::json build_chat_request(const EndpointSettings& settings, const std::string& instructions,
                                  Side side, std::span<const Turn> history);

// Extracts choices[0].message.content. Throws BackendError when absent.
std::string parse_chat_response(const std::string& body);

// Thread-safe: each call opens its own connection, so one client can serve
// every in-flight debate.
class EndpointClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit EndpointClient(EndpointSettings settings, Sleeper sleeper = {});

  const EndpointSettings& settings() const { return settings_; }

  // POSTs the payload, retrying transport failures and 5xx responses up to
  // retry_limit times with exponential backoff. Throws BackendError after
  // the retries are exhausted or on any other non-2xx response.
  std::string complete(const nlohmann::json& payload) const;

 private:
  EndpointSettings settings_;
  Sleeper sleeper_;
};

class EndpointAgent final : public Agent {
 public:
  EndpointAgent(Side side, std::string instructions, std::shared_ptr<const EndpointClient> client);

  BackendKind backend() const override { return BackendKind::Endpoint; }
  std::string next_message(std::span<const Turn> history, Rng& rng) override;
  std::map<std::string, std::string> metadata() const override;

 private:
  std::shared_ptr<const EndpointClient> client_;
};

}  // namespace debatesim
