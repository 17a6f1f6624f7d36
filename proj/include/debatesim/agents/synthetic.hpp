#pragma once

#include <array>
#include <string>

#include "debatesim/core/debate.hpp"

namespace debatesim {

// Stochastic stand-in for a language-model debater. On each eligible turn the
// speaking agent concedes with hazard
//
//   h = clamp(base + anchoring_bonus * [opponent started]
//                  + toxic_persuasion_bonus * [opponent is toxic])
//
// where base = base_hazard * slowdown(level). A turn is eligible once it is
// at or past both the debate's min_rounds and first_opportunity_turn.
//
// With order_neutral set, the side that owns the first eligible turn uses
// base / (1 + base) instead of base. That makes the per-round concession
// probability equal for both sides, so with both bonuses at zero neither the
// starter nor the responder is favored by turn order alone.
struct SyntheticAgentParams {
  double base_hazard = 0.30;
  // Multiplicative hazard factor indexed by ToxicityLevel; No must be 1.
  std::array<double, 4> slowdown = {1.0, 0.55, 0.45, 0.35};
  double anchoring_bonus = 0.05;
  double toxic_persuasion_bonus = 0.03;
  double hazard_floor = 0.001;
  double hazard_ceiling = 0.999;
  int first_opportunity_turn = 6;
  bool order_neutral = true;
  // Probability that the responder declines on its first turn (turn 2).
  double refusal_probability = 0.0;

  double slowdown_for(ToxicityLevel level) const {
    return slowdown[static_cast<std::size_t>(level)];
  }

  // Throws InvalidConfig if any invariant is violated.
  void validate() const;
};

// First turn on which a concession may be emitted.
int first_eligible_turn(const SyntheticAgentParams& params, const DebateConfig& config);

// Concession hazard of `speaker` on any eligible turn of this debate.
double concession_hazard(const SyntheticAgentParams& params, const DebateConfig& config,
                         Side speaker);

class SyntheticAgent final : public Agent {
 public:
  SyntheticAgent(Side side, SyntheticAgentParams params, DebateConfig config,
                 std::string concession_marker = "[CONCEDE]", std::string instructions = {});

  BackendKind backend() const override { return BackendKind::Synthetic; }
  std::string next_message(std::span<const Turn> history, Rng& rng) override;
  std::map<std::string, std::string> metadata() const override;

  double hazard() const { return hazard_; }

 private:
  std::string filler(int turn_index) const;

  SyntheticAgentParams params_;
  DebateConfig config_;
  std::string marker_;
  double hazard_;
  int first_eligible_;
};

}  // namespace debatesim
