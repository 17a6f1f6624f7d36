#include "debatesim/persistence/records.hpp"

namespace debatesim {

namespace {

nlohmann::json optional_side(const std::optional<Side>& side) {
  return side ? nlohmann::json(std::string(to_string(*side))) : nlohmann::json(nullptr);
}

std::optional<Side> side_or_null(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return parse_side(j.get<std::string>());
}

}  // namespace

nlohmann::json to_json(const Topic& topic) {
  return {{"id", topic.id}, {"domain", topic.domain}, {"proposition", topic.proposition}};
}

Topic topic_from_json(const nlohmann::json& j) {
  return Topic{j.at("id").get<std::string>(), j.at("domain").get<std::string>(),
               j.at("proposition").get<std::string>()};
}

nlohmann::json to_json(const DebateConfig& c) {
  return {{"topic", to_json(c.topic)},
          {"starter", std::string(to_string(c.starter))},
          {"toxic_side", optional_side(c.toxic_side)},
          {"level", std::string(to_string(c.level))},
          {"round_cap", c.round_cap},
          {"min_rounds", c.min_rounds},
          {"seed", c.seed},
          {"model_tag", c.model_tag}};
}

DebateConfig config_from_json(const nlohmann::json& j) {
  DebateConfig c;
  c.topic = topic_from_json(j.at("topic"));
  c.starter = parse_side(j.at("starter").get<std::string>());
  c.toxic_side = side_or_null(j.at("toxic_side"));
  c.level = parse_level(j.at("level").get<std::string>());
  c.round_cap = j.at("round_cap").get<int>();
  c.min_rounds = j.at("min_rounds").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.model_tag = j.at("model_tag").get<std::string>();
  return c;
}

nlohmann::json to_json(const TrialRecord& r) {
  const Transcript& t = r.transcript;
  nlohmann::json turns = nlohmann::json::array();
  for (const Turn& turn : t.turns) {
    turns.push_back({{"index", turn.index},
                     {"side", std::string(to_string(turn.side))},
                     {"kind", std::string(to_string(turn.kind))},
                     {"text", turn.text}});
  }
  return {{"trial", r.trial_index},
          {"config", to_json(t.config)},
          {"turns", std::move(turns)},
          {"status", std::string(to_string(t.status))},
          {"winner", optional_side(t.winner)},
          {"t_conv", t.t_conv ? nlohmann::json(*t.t_conv) : nlohmann::json(nullptr)},
          {"meta", t.metadata}};
}

TrialRecord trial_from_json(const nlohmann::json& j) {
  TrialRecord r;
  r.trial_index = j.at("trial").get<std::uint64_t>();
  Transcript& t = r.transcript;
  t.config = config_from_json(j.at("config"));
  for (const auto& turn : j.at("turns")) {
    t.turns.push_back(Turn{turn.at("index").get<int>(),
                           parse_side(turn.at("side").get<std::string>()),
                           turn.at("text").get<std::string>(),
                           parse_turn_kind(turn.at("kind").get<std::string>())});
  }
  t.status = parse_status(j.at("status").get<std::string>());
  t.winner = side_or_null(j.at("winner"));
  if (!j.at("t_conv").is_null()) t.t_conv = j.at("t_conv").get<int>();
  t.metadata = j.at("meta").get<std::map<std::string, std::string>>();
  return r;
}

nlohmann::json to_json(const AbortedRecord& r) {
  return {{"trial", r.trial_index},
          {"condition", std::string(to_string(r.condition))},
          {"model_tag", r.model_tag},
          {"error", r.error}};
}

AbortedRecord aborted_from_json(const nlohmann::json& j) {
  return AbortedRecord{j.at("trial").get<std::uint64_t>(),
                       parse_level(j.at("condition").get<std::string>()),
                       j.at("model_tag").get<std::string>(), j.at("error").get<std::string>()};
}

std::string encode_line(const nlohmann::json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace debatesim
