#include "debatesim/agents/endpoint.hpp"

#include <cstdio>
#include <thread>

#include <httplib.h>

namespace debatesim {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::json build_chat_request(const EndpointSettings& settings, const std::string& instructions,
                                  Side side, std::span<const Turn> history) {
  nlohmann::json messages = nlohmann::json::array();
  messages.push_back({{"role", "system"}, {"content", instructions}});
  if (history.empty() || history.front().side == side) {
    messages.push_back({{"role", "user"}, {"content", settings.opening_prompt}});
  }
  for (const Turn& turn : history) {
    messages.push_back(
        {{"role", turn.side == side ? "assistant" : "user"}, {"content", turn.text}});
  }

  nlohmann::json payload{{"model", settings.model}, {"messages", std::move(messages)}};
  if (settings.temperature) payload["temperature"] = *settings.temperature;
  if (settings.top_p) payload["top_p"] = *settings.top_p;
  if (settings.max_tokens) payload["max_tokens"] = *settings.max_tokens;
  return payload;
}

std::string parse_chat_response(const std::string& body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
    const auto& content = doc.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw BackendError("response content is not a string");
    return content.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("malformed chat response: ") + e.what());
  }
}

EndpointClient::EndpointClient(EndpointSettings settings, Sleeper sleeper)
    : settings_(std::move(settings)), sleeper_(std::move(sleeper)) {
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (settings_.retry_limit < 0) throw InvalidConfig("retry_limit must be >= 0");
}

std::string EndpointClient::complete(const nlohmann::json& payload) const {
  httplib::Client http(settings_.base_url);
  const auto timeout = settings_.timeout;
  http.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout).count(),
                              static_cast<time_t>((timeout.count() % 1000) * 1000));
  http.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout).count(),
                        static_cast<time_t>((timeout.count() % 1000) * 1000));

  httplib::Headers headers;
  if (!settings_.token.empty()) {
    headers.emplace(settings_.auth_header, settings_.auth_prefix + settings_.token);
  }
  const std::string body = payload.dump();

  std::string last_error;
  for (int attempt = 0; attempt <= settings_.retry_limit; ++attempt) {
    if (attempt > 0) sleeper_(settings_.backoff_base * (1LL << (attempt - 1)));
    auto res = http.Post(settings_.path, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "server error " + std::to_string(res->status);
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      throw BackendError("endpoint returned status " + std::to_string(res->status) + ": " +
                         res->body);
    }
    return parse_chat_response(res->body);
  }
  throw BackendError("endpoint failed after " + std::to_string(settings_.retry_limit + 1) +
                     " attempts (" + last_error + ")");
}

EndpointAgent::EndpointAgent(Side side, std::string instructions,
                             std::shared_ptr<const EndpointClient> client)
    : Agent(side, std::move(instructions)), client_(std::move(client)) {}

std::string EndpointAgent::next_message(std::span<const Turn> history, Rng& /*rng*/) {
  return client_->complete(build_chat_request(client_->settings(), instructions(), side(), history));
}

std::map<std::string, std::string> EndpointAgent::metadata() const {
  const auto& s = client_->settings();
  const auto or_default = [](const auto& opt, auto fmt) {
    return opt ? fmt(*opt) : std::string("endpoint-default");
  };
  return {
      {"endpoint.model", s.model},
      {"endpoint.temperature", or_default(s.temperature, format_double)},
      {"endpoint.top_p", or_default(s.top_p, format_double)},
      {"endpoint.max_tokens", or_default(s.max_tokens, [](int v) { return std::to_string(v); })},
  };
}

}  // namespace debatesim
