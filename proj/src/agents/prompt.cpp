#include "debatesim/agents/prompt.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace debatesim {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  if (needle.empty()) return 0;
  std::size_t count = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

void require_placeholder(const std::string& slot, const char* slot_name, const char* key) {
  if (slot.empty()) throw MissingSlot(std::string("template has no ") + slot_name);
  if (slot.find(std::string("{") + key + "}") == std::string::npos) {
    throw MissingSlot(std::string(slot_name) + " lacks the {" + key + "} placeholder");
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  return text;
}

}  // namespace

PromptTemplate PromptTemplate::defaults() {
  return PromptTemplate{
      "You are the {side} debater in a structured one-on-one debate.",
      "You argue {stance} the proposition. Your goal is to convince your counterpart of your "
      "assigned standpoint through argumentation. Keep each message to a single argument.",
      "Proposition ({domain}): {proposition}",
      "Behavior: {toxicity_directive}",
      "If, and only if, your counterpart has convinced you, write your final message and end it "
      "with the exact token {concession_marker}. Never write that token otherwise.",
  };
}

ToxicityDirectives ToxicityDirectives::defaults() {
  return ToxicityDirectives{{
      "",
      "Be mildly dismissive toward your counterpart and occasionally condescending.",
      "Be openly rude: belittle your counterpart's arguments and question their competence.",
      "Be hostile and insulting toward your counterpart in every message while still arguing "
      "your position.",
  }};
}

ToxicityDirectives ToxicityDirectives::load(const std::filesystem::path& dir) {
  ToxicityDirectives out;
  for (ToxicityLevel level : kAllLevels) {
    std::string name(to_string(level));
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.by_level[static_cast<std::size_t>(level)] = read_text(dir / (name + ".txt"));
  }
  return out;
}

void validate(const PromptKit& kit) {
  const auto& t = kit.layout;
  require_placeholder(t.stance_slot, "stance_slot", "stance");
  require_placeholder(t.topic_slot, "topic_slot", "proposition");
  require_placeholder(t.toxicity_slot, "toxicity_slot", "toxicity_directive");
  require_placeholder(t.protocol_slot, "protocol_slot", "concession_marker");
  for (ToxicityLevel level : {ToxicityLevel::Mild, ToxicityLevel::Moderate, ToxicityLevel::Heavy}) {
    if (kit.directives.at(level).empty()) {
      throw MissingSlot("no toxicity directive for level " + std::string(to_string(level)));
    }
  }
}

std::string substitute(const std::string& text, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      std::size_t j = i + 1;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      if (j < text.size() && text[j] == '}' && j > i + 1) {
        const std::string key = text.substr(i + 1, j - i - 1);
        auto it = values.find(key);
        if (it == values.end()) throw TemplateError("unresolved placeholder {" + key + "}");
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::string render_protocol_clause(const PromptKit& kit, const ConvergenceProtocol& protocol) {
  require_placeholder(kit.layout.protocol_slot, "protocol_slot", "concession_marker");
  return substitute(kit.layout.protocol_slot, {{"concession_marker", protocol.concession_marker}});
}

std::string render_instructions(const PromptKit& kit, const Topic& topic, Side side,
                                ToxicityLevel level, bool is_toxic,
                                const ConvergenceProtocol& protocol) {
  validate(kit);
  if (is_toxic && level == ToxicityLevel::No) {
    throw TemplateError("an agent cannot be toxic at level No");
  }

  std::map<std::string, std::string> values{
      {"side", std::string(to_string(side))},
      {"opponent_side", std::string(to_string(opposite(side)))},
      {"stance", side == Side::Pro ? "in favour of" : "against"},
      {"proposition", topic.proposition},
      {"domain", topic.domain},
      {"concession_marker", protocol.concession_marker},
  };
  const std::string directive = is_toxic ? substitute(kit.directives.at(level), values) : "";
  values["toxicity_directive"] = directive;

  const auto& t = kit.layout;
  std::vector<std::string> parts;
  for (const std::string* slot : {&t.persona_slot, &t.stance_slot, &t.topic_slot}) {
    if (!slot->empty()) parts.push_back(substitute(*slot, values));
  }
  if (is_toxic) parts.push_back(substitute(t.toxicity_slot, values));
  const std::string clause = render_protocol_clause(kit, protocol);
  parts.push_back(clause);

  std::string bundle;
  for (const auto& p : parts) {
    if (!bundle.empty()) bundle += "\n\n";
    bundle += p;
  }

  if (count_occurrences(bundle, clause) != 1) {
    throw TemplateError("protocol clause must appear exactly once in the instructions");
  }
  if (is_toxic && count_occurrences(bundle, directive) != 1) {
    throw TemplateError("toxicity directive must appear exactly once in the instructions");
  }
  return bundle;
}

}  // namespace debatesim
