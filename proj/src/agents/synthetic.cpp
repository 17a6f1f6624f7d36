#include "debatesim/agents/synthetic.hpp"

#include <algorithm>
#include <cstdio>

namespace debatesim {

namespace {

constexpr const char* kOpeners[] = {
    "Consider this:", "Let me be clear:", "Look at the evidence:", "Here is the core issue:",
    "Think about the consequences:", "My position stands:", "Your argument misses something:",
    "Step back for a moment:",
};

constexpr const char* kReasons[] = {
    "the long-term costs outweigh the short-term gains",
    "the people most affected have the least say",
    "history offers clear precedents",
    "the practical evidence points one way",
    "fairness demands a consistent rule",
    "the alternative creates worse incentives",
    "individual liberty has to be weighed carefully here",
    "the institutions involved cannot carry that burden",
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void SyntheticAgentParams::validate() const {
  const auto open_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!open_unit(base_hazard)) throw InvalidConfig("base_hazard must lie in (0,1)");
  if (slowdown[0] != 1.0) throw InvalidConfig("slowdown for level No must be 1");
  for (std::size_t i = 0; i < slowdown.size(); ++i) {
    if (!(slowdown[i] > 0.0)) throw InvalidConfig("slowdown factors must be positive");
    if (i > 0 && slowdown[i] > slowdown[i - 1]) {
      throw InvalidConfig("slowdown must be non-increasing in toxicity level");
    }
  }
  if (anchoring_bonus < 0.0) throw InvalidConfig("anchoring_bonus must be >= 0");
  if (toxic_persuasion_bonus < 0.0) throw InvalidConfig("toxic_persuasion_bonus must be >= 0");
  if (!open_unit(hazard_floor) || !open_unit(hazard_ceiling) || hazard_floor > hazard_ceiling) {
    throw InvalidConfig("hazard clamps must satisfy 0 < floor <= ceiling < 1");
  }
  if (first_opportunity_turn < 1) throw InvalidConfig("first_opportunity_turn must be >= 1");
  if (refusal_probability < 0.0 || refusal_probability >= 1.0) {
    throw InvalidConfig("refusal_probability must lie in [0,1)");
  }
}

int first_eligible_turn(const SyntheticAgentParams& params, const DebateConfig& config) {
  return std::max({1, config.min_rounds, params.first_opportunity_turn});
}

double concession_hazard(const SyntheticAgentParams& params, const DebateConfig& config,
                         Side speaker) {
  double base = params.base_hazard * params.slowdown_for(config.level);
  if (params.order_neutral) {
    const int first = first_eligible_turn(params, config);
    const Side owner = first % 2 == 1 ? config.starter : opposite(config.starter);
    if (speaker == owner) base = base / (1.0 + base);
  }
  const Side opponent = opposite(speaker);
  double h = base;
  if (opponent == config.starter) h += params.anchoring_bonus;
  if (config.toxic_side && *config.toxic_side == opponent) h += params.toxic_persuasion_bonus;
  return std::clamp(h, params.hazard_floor, params.hazard_ceiling);
}

SyntheticAgent::SyntheticAgent(Side side, SyntheticAgentParams params, DebateConfig config,
                               std::string concession_marker, std::string instructions)
    : Agent(side, std::move(instructions)),
      params_(params),
      config_(std::move(config)),
      marker_(std::move(concession_marker)) {
  params_.validate();
  hazard_ = concession_hazard(params_, config_, side);
  first_eligible_ = first_eligible_turn(params_, config_);
}

std::string SyntheticAgent::next_message(std::span<const Turn> history, Rng& rng) {
  const int turn = static_cast<int>(history.size()) + 1;
  if (turn == 2 && params_.refusal_probability > 0.0 && rng.bernoulli(params_.refusal_probability)) {
    return "I must decline to continue this debate.";
  }
  const double u = rng.uniform();
  if (turn >= first_eligible_ && u < hazard_) {
    return "That is a fair point, and you have convinced me. " + marker_;
  }
  return filler(turn);
}

std::string SyntheticAgent::filler(int turn_index) const {
  const std::uint64_t h = hash_seed({config_.seed, static_cast<std::uint64_t>(turn_index),
                                     static_cast<std::uint64_t>(side())});
  const char* opener = kOpeners[h % std::size(kOpeners)];
  const char* reason = kReasons[(h >> 16) % std::size(kReasons)];
  const char* stance = side() == Side::Pro ? "I support" : "I oppose";
  return std::string(opener) + " " + stance + " the claim that \"" + config_.topic.proposition +
         "\" because " + reason + ".";
}

std::map<std::string, std::string> SyntheticAgent::metadata() const {
  return {
      {"synthetic.base_hazard", format_double(params_.base_hazard)},
      {"synthetic.slowdown", format_double(params_.slowdown_for(config_.level))},
      {"synthetic.anchoring_bonus", format_double(params_.anchoring_bonus)},
      {"synthetic.toxic_persuasion_bonus", format_double(params_.toxic_persuasion_bonus)},
      {"synthetic.first_opportunity_turn", std::to_string(params_.first_opportunity_turn)},
      {"synthetic.order_neutral", params_.order_neutral ? "true" : "false"},
      {"synthetic.refusal_probability", format_double(params_.refusal_probability)},
  };
}

}  // namespace debatesim
