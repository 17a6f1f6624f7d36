#include "stub_server.hpp"

#include <stdexcept>

#include <httplib.h>

namespace debatesim::testing {

StubChatServer::StubChatServer(Options options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  server_->Post(options_.path, [this](const httplib::Request& req, httplib::Response& res) {
    Request entry;
    entry.authorization = req.get_header_value("Authorization");
    try {
      entry.body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::exception&) {
      entry.body = req.body;
    }

    std::lock_guard lock(mutex_);
    const std::size_t ordinal = log_.size();
    if (!options_.expected_token.empty() &&
        entry.authorization != "Bearer " + options_.expected_token) {
      res.status = 401;
      res.set_content(R"({"error":"unauthorized"})", "application/json");
    } else if (ordinal < options_.fail_first) {
      res.status = options_.fail_status;
      res.set_content(R"({"error":"injected failure"})", "application/json");
    } else if (!entry.body.is_object() || !entry.body.contains("messages")) {
      res.status = 400;
      res.set_content(R"({"error":"bad request"})", "application/json");
    } else {
      const nlohmann::json reply{
          {"id", "stub-" + std::to_string(ordinal)},
          {"object", "chat.completion"},
          {"choices",
           {{{"index", 0},
             {"message", {{"role", "assistant"}, {"content", reply_for(entry.body, ordinal)}}},
             {"finish_reason", "stop"}}}}};
      res.status = 200;
      res.set_content(reply.dump(), "application/json");
    }
    entry.status = res.status;
    log_.push_back(std::move(entry));
  });

  if (options_.port == 0) {
    port_ = server_->bind_to_any_port("127.0.0.1");
  } else if (server_->bind_to_port("127.0.0.1", options_.port)) {
    port_ = options_.port;
  } else {
    port_ = -1;
  }
  if (port_ <= 0) throw std::runtime_error("stub server could not bind");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

StubChatServer::~StubChatServer() { stop(); }

void StubChatServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string StubChatServer::base_url() const {
  return "http://127.0.0.1:" + std::to_string(port_);
}

std::string StubChatServer::reply_for(const nlohmann::json& body, std::size_t ordinal) {
  if (!options_.replies.empty()) {
    std::string r = std::move(options_.replies.front());
    options_.replies.pop_front();
    return r;
  }
  if (options_.responder) return options_.responder(body);
  return "Argument " + std::to_string(ordinal) + ": I maintain my position on this question.";
}

std::vector<StubChatServer::Request> StubChatServer::requests() const {
  std::lock_guard lock(mutex_);
  return log_;
}

std::size_t StubChatServer::request_count() const {
  std::lock_guard lock(mutex_);
  return log_.size();
}

}  // namespace debatesim::testing
