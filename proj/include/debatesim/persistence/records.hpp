#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "debatesim/core/types.hpp"

namespace debatesim {

// One completed debate as stored in the transcript log.
struct TrialRecord {
  std::uint64_t trial_index = 0;
  Transcript transcript;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// A trial whose backend failed for good. Kept out of the transcript log so a
// resume retries it.
struct AbortedRecord {
  std::uint64_t trial_index = 0;
  ToxicityLevel condition = ToxicityLevel::No;
  std::string model_tag;
  std::string error;

  friend bool operator==(const AbortedRecord&, const AbortedRecord&) = default;
};

nlohmann::json to_json(const Topic& topic);
Topic topic_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DebateConfig& config);
DebateConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TrialRecord& record);
TrialRecord trial_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AbortedRecord& record);
AbortedRecord aborted_from_json(const nlohmann::json& j);

// Single-line serialization (no trailing newline). Keys are emitted in
// sorted order, so equal records encode to identical bytes. Invalid UTF-8
// in text is replaced rather than rejected.
std::string encode_line(const nlohmann::json& j);

}  // namespace debatesim
