#include <doctest.h>

#include <set>

#include "debatesim/agents/scripted.hpp"
#include "debatesim/core/corpus.hpp"
#include "debatesim/core/debate.hpp"
#include "debatesim/core/protocol.hpp"
#include "debatesim/core/random.hpp"

using namespace debatesim;

namespace {

DebateConfig base_config() {
  DebateConfig c;
  c.topic = Topic{"society-99", "society", "We should ban gambling"};
  c.starter = Side::Pro;
  c.level = ToxicityLevel::No;
  c.round_cap = 60;
  c.min_rounds = 2;
  c.seed = 7;
  c.model_tag = "test";
  return c;
}

std::vector<std::string> args(int n, const std::string& prefix) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + " argument " + std::to_string(i));
  return out;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("enum names round-trip and parse case-insensitively") {
  for (ToxicityLevel l : kAllLevels) CHECK(parse_level(to_string(l)) == l);
  CHECK(parse_level("heavy") == ToxicityLevel::Heavy);
  CHECK(parse_side("CON") == Side::Con);
  CHECK(parse_turn_kind("concession") == TurnKind::Concession);
  CHECK(parse_status("refused") == DebateStatus::Refused);
  CHECK_THROWS_AS(parse_level("extreme"), std::invalid_argument);
  CHECK(opposite(Side::Pro) == Side::Con);
}

TEST_CASE("config validation") {
  DebateConfig c = base_config();
  CHECK_NOTHROW(validate(c));

  SUBCASE("No level must not name a toxic side") {
    c.toxic_side = Side::Pro;
    CHECK_THROWS_AS(validate(c), InvalidConfig);
  }
  SUBCASE("toxic level needs a toxic side") {
    c.level = ToxicityLevel::Mild;
    CHECK_THROWS_AS(validate(c), InvalidConfig);
    c.toxic_side = Side::Con;
    CHECK_NOTHROW(validate(c));
  }
  SUBCASE("round cap must leave room after min_rounds") {
    c.min_rounds = 10;
    c.round_cap = 11;
    CHECK_THROWS_AS(validate(c), InvalidConfig);
    c.round_cap = 12;
    CHECK_NOTHROW(validate(c));
  }
  SUBCASE("empty proposition") {
    c.topic.proposition.clear();
    CHECK_THROWS_AS(validate(c), InvalidConfig);
  }
}

TEST_CASE("turn classification") {
  const ConvergenceProtocol p;
  CHECK(classify_turn("You are right. [CONCEDE]", p) == TurnKind::Concession);
  CHECK(classify_turn("I cannot continue this conversation.", p) == TurnKind::Refusal);
  CHECK(classify_turn("Museums must stay free because they serve everyone.", p) ==
        TurnKind::Argument);
  // whitespace and case do not matter
  CHECK(classify_turn("fine,   you win  [concede]", p) == TurnKind::Concession);
  CHECK(classify_turn("I  CANNOT\ncontinue.", p) == TurnKind::Refusal);
  // a concession that also sounds like a refusal counts as a concession
  CHECK(classify_turn("I cannot continue to disagree. [CONCEDE]", p) == TurnKind::Concession);

  ConvergenceProtocol custom;
  custom.concession_marker = "<<yield>>";
  CHECK(classify_turn("[CONCEDE]", custom) == TurnKind::Argument);
  CHECK(classify_turn("ok <<YIELD>>", custom) == TurnKind::Concession);
}

TEST_CASE("Con concedes on its 4th message") {
  const DebateConfig c = base_config();
  ScriptedAgent pro(Side::Pro, args(4, "pro"));
  auto con_lines = args(3, "con");
  con_lines.push_back("You have convinced me. [CONCEDE]");
  ScriptedAgent con(Side::Con, con_lines);

  const Transcript t = run_debate(c, pro, con);
  CHECK(t.turns.size() == 8);
  CHECK(t.status == DebateStatus::Converged);
  REQUIRE(t.winner);
  CHECK(*t.winner == Side::Pro);
  REQUIRE(t.t_conv);
  CHECK(*t.t_conv == 8);
  CHECK_NOTHROW(check_invariants(t));
}

TEST_CASE("agents that never concede hit the cap") {
  DebateConfig c = base_config();
  c.round_cap = 23;
  ScriptedAgent pro(Side::Pro, args(12, "pro"));
  ScriptedAgent con(Side::Con, args(11, "con"));
  const Transcript t = run_debate(c, pro, con);
  CHECK(t.turns.size() == 23);
  CHECK(t.status == DebateStatus::Capped);
  CHECK_FALSE(t.winner);
  CHECK_FALSE(t.t_conv);
  CHECK(pro.remaining() == 0);
  CHECK(con.remaining() == 0);
  CHECK_NOTHROW(check_invariants(t));
}

TEST_CASE("refusal on turn 2 ends the debate") {
  const DebateConfig c = base_config();
  ScriptedAgent pro(Side::Pro, args(3, "pro"));
  ScriptedAgent con(Side::Con, {"I cannot continue this conversation."});
  const Transcript t = run_debate(c, pro, con);
  CHECK(t.status == DebateStatus::Refused);
  CHECK(t.turns.size() == 2);
  CHECK(t.turns[1].kind == TurnKind::Refusal);
  CHECK_FALSE(t.winner);
  CHECK_FALSE(t.t_conv);
  CHECK_NOTHROW(check_invariants(t));
}

TEST_CASE("a concession before min_rounds is an ordinary argument") {
  DebateConfig c = base_config();
  c.min_rounds = 4;
  ScriptedAgent pro(Side::Pro, {"I concede already [CONCEDE]", "p2", "p3"});
  ScriptedAgent con(Side::Con, {"c1 [CONCEDE]", "c2 [CONCEDE]"});
  const Transcript t = run_debate(c, pro, con);
  REQUIRE(t.turns.size() == 4);
  CHECK(t.turns[0].kind == TurnKind::Argument);
  CHECK(t.turns[1].kind == TurnKind::Argument);
  CHECK(t.turns[2].kind == TurnKind::Argument);
  CHECK(t.turns[3].kind == TurnKind::Concession);
  CHECK(*t.t_conv == 4);
  CHECK(*t.winner == Side::Pro);
}

TEST_CASE("Con as starter speaks on odd turns") {
  DebateConfig c = base_config();
  c.starter = Side::Con;
  ScriptedAgent pro(Side::Pro, {"p1", "p2 [CONCEDE]"});
  ScriptedAgent con(Side::Con, {"c1", "c2"});
  const Transcript t = run_debate(c, pro, con);
  REQUIRE(t.turns.size() == 4);
  for (const Turn& turn : t.turns) {
    CHECK(turn.side == (turn.index % 2 == 1 ? Side::Con : Side::Pro));
  }
  CHECK(*t.winner == Side::Con);
}

TEST_CASE("agents bound to the wrong side are rejected before any call") {
  const DebateConfig c = base_config();
  ScriptedAgent a(Side::Con, {});
  ScriptedAgent b(Side::Con, {});
  CHECK_THROWS_AS(run_debate(c, a, b), InvalidConfig);
}

TEST_CASE("transcript invariants catch malformed transcripts") {
  Transcript t;
  t.config = base_config();
  t.turns = {{1, Side::Pro, "a", TurnKind::Argument}, {2, Side::Pro, "b", TurnKind::Argument}};
  t.status = DebateStatus::Capped;
  CHECK_THROWS_AS(check_invariants(t), std::logic_error);

  t.turns[1].side = Side::Con;
  t.config.round_cap = 2;
  CHECK_NOTHROW(check_invariants(t));

  t.status = DebateStatus::Converged;  // no concession turn, no winner
  CHECK_THROWS_AS(check_invariants(t), std::logic_error);
}

TEST_CASE("seed derivation and rng are deterministic") {
  CHECK(hash_seed({1, 2, 3}) == hash_seed({1, 2, 3}));
  CHECK(hash_seed({1, 2, 3}) != hash_seed({1, 3, 2}));
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  // std::mt19937_64 has a fixed sequence: the 10000th output of the default
  // seed is pinned by the standard.
  std::mt19937_64 ref;
  ref.discard(9999);
  CHECK(ref() == 9981545732273789042ULL);

  Rng r(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.below(7) < 7);
  }
}

TEST_CASE("bundled corpus") {
  const auto topics = bundled_topics();
  CHECK(topics.size() == 63);
  std::set<std::string> ids;
  for (const auto& t : topics) {
    CHECK_FALSE(t.proposition.empty());
    ids.insert(t.id);
  }
  CHECK(ids.size() == topics.size());
  CHECK_NOTHROW(validate_corpus(topics));

  const auto from_file = load_corpus(std::string(DEBATESIM_SOURCE_DIR) + "/data/topics.json");
  CHECK(from_file == topics);

  std::vector<Topic> dup = {topics[0], topics[0]};
  CHECK_THROWS(validate_corpus(dup));
  CHECK_THROWS(validate_corpus({}));
}

}  // TEST_SUITE
