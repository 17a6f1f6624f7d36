#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "debatesim/core/protocol.hpp"
#include "debatesim/core/types.hpp"

namespace debatesim {

class TemplateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A template slot is absent or lacks its required placeholder.
class MissingSlot : public TemplateError {
 public:
  using TemplateError::TemplateError;
};

// Instruction layout for one debater. Each slot is a text region that may use
// the placeholders {side}, {opponent_side}, {stance}, {proposition},
// {domain}, {toxicity_directive} and {concession_marker}. Required:
//   stance_slot    {stance}
//   topic_slot     {proposition}
//   toxicity_slot  {toxicity_directive}
//   protocol_slot  {concession_marker}
struct PromptTemplate {
  std::string persona_slot;
  std::string stance_slot;
  std::string topic_slot;
  std::string toxicity_slot;
  std::string protocol_slot;

  static PromptTemplate defaults();
};

// Behavior directive per toxicity level. The No entry is never injected.
struct ToxicityDirectives {
  std::array<std::string, 4> by_level;

  const std::string& at(ToxicityLevel level) const {
    return by_level[static_cast<std::size_t>(level)];
  }

  static ToxicityDirectives defaults();
  // Reads no.txt, mild.txt, moderate.txt and heavy.txt from `dir`.
  static ToxicityDirectives load(const std::filesystem::path& dir);
};

struct PromptKit {
  PromptTemplate layout = PromptTemplate::defaults();
  ToxicityDirectives directives = ToxicityDirectives::defaults();
};

// Throws MissingSlot / TemplateError when the kit cannot render.
void validate(const PromptKit& kit);

// Replaces {name} placeholders from `values`. Unknown names throw
// TemplateError; text outside {identifier} braces is left untouched.
std::string substitute(const std::string& text, const std::map<std::string, std::string>& values);

// Renders the instruction bundle for one debater. The protocol clause is
// always present exactly once; the toxicity directive for `level` is present
// (exactly once) iff `is_toxic`.
std::string render_instructions(const PromptKit& kit, const Topic& topic, Side side,
                                ToxicityLevel level, bool is_toxic,
                                const ConvergenceProtocol& protocol = {});

// Renders the protocol clause alone; render_instructions embeds it verbatim.
std::string render_protocol_clause(const PromptKit& kit, const ConvergenceProtocol& protocol);

}  // namespace debatesim
