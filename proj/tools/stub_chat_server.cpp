// Standalone stub chat-completion server for trying the endpoint backend
// without a model. Replies with numbered arguments and concedes after a set
// number of successful requests.
#include <csignal>
#include <chrono>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "stub_server.hpp"

namespace {
volatile std::sig_atomic_t g_stop = 0;
void on_signal(int) { g_stop = 1; }
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stub chat-completion server"};
  int port = 8080;
  std::size_t fail_first = 0;
  int concede_after = 9;
  std::string marker = "[CONCEDE]";
  app.add_option("--port", port, "port on 127.0.0.1 (0 picks one)");
  app.add_option("--fail-first", fail_first, "answer the first k requests with 500");
  app.add_option("--concede-after", concede_after, "replies before each debate's concession");
  app.add_option("--marker", marker, "concession marker to emit");
  CLI11_PARSE(app, argc, argv);

  debatesim::testing::StubChatServer::Options opts;
  opts.port = port;
  opts.fail_first = fail_first;
  opts.responder = [&](const nlohmann::json& request) {
    // One system message plus history; concede once the debate is long enough.
    const auto turns = request.at("messages").size() - 1;
    if (static_cast<int>(turns) >= concede_after) {
      return "You have persuaded me. " + marker;
    }
    return "Argument " + std::to_string(turns + 1) + ": I maintain my position.";
  };
  debatesim::testing::StubChatServer server(std::move(opts));
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on " << server.base_url() << std::endl;
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  std::cout << "served " << server.request_count() << " requests" << std::endl;
  return 0;
}
