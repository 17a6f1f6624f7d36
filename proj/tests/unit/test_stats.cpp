#include <doctest.h>

#include <cmath>
#include <numeric>

#include "debatesim/stats/analysis.hpp"
#include "debatesim/stats/report.hpp"
#include "debatesim/stats/special.hpp"
#include "debatesim/stats/tests.hpp"
#include "oracles.hpp"

using namespace debatesim;
using namespace debatesim::stats;

namespace {

std::vector<double> indicators(std::size_t ones, std::size_t n) {
  std::vector<double> v(n, 0.0);
  std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(ones), 1.0);
  return v;
}

OutcomeRecord rec(ToxicityLevel level, int t, Side winner = Side::Pro, Side starter = Side::Pro,
                  std::optional<Side> toxic = std::nullopt, std::string model = "m") {
  if (level != ToxicityLevel::No && !toxic) toxic = Side::Con;
  return OutcomeRecord{std::move(model), level, t, winner, starter, toxic, "topic-01"};
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("log_gamma against std::lgamma") {
  for (double x = 0.05; x < 400.0; x *= 1.07) {
    const double ref = std::lgamma(x);
    CHECK(std::abs(log_gamma(x) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
  }
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::exp(log_gamma(5.0)) == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("incomplete beta edges and symmetry") {
  CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  // I_x(1, 1) = x
  CHECK(regularized_incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-13));
  for (double x : {0.1, 0.5, 0.77}) {
    const double a = 2.5, b = 7.0;
    CHECK(regularized_incomplete_beta(a, b, x) + regularized_incomplete_beta(b, a, 1 - x) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("exact binomial equals full enumeration for n <= 20") {
  for (int n = 1; n <= 20; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (double p : {0.5, 0.3, 0.1, 0.77}) {
        const double ours = binom_test_two_sided(k, n, p).p_value;
        const double ref = oracle::binomial_two_sided_enumerated(k, n, p);
        CHECK_MESSAGE(std::abs(ours - ref) <= 1e-12, "k=" << k << " n=" << n << " p=" << p);
      }
    }
  }
}

TEST_CASE("binomial examples") {
  CHECK(binom_test_two_sided(0, 10, 0.5).p_value == doctest::Approx(2.0 / 1024).epsilon(1e-12));
  CHECK(binom_test_two_sided(10, 10, 0.5).p_value == doctest::Approx(2.0 / 1024).epsilon(1e-12));
  for (int n : {2, 10, 600, 1000}) CHECK(binom_test_two_sided(n / 2, n, 0.5).p_value == 1.0);
  CHECK(binom_test_two_sided(412, 600, 0.5).p_value < 1e-4);
  // reference from an independent implementation
  CHECK(binom_test_two_sided(7, 20, 0.3).p_value ==
        doctest::Approx(0.6294979666766769).epsilon(1e-10));
  CHECK(binom_test_two_sided(3, 10, 0.5).statistic == doctest::Approx(0.3));
}

TEST_CASE("binomial properties") {
  // symmetry under p0 = 0.5 and monotone tails
  for (int n : {15, 101, 600}) {
    double prev = 0.0;
    for (int k = 0; k <= n / 2; ++k) {
      const double lo = binom_test_two_sided(k, n, 0.5).p_value;
      const double hi = binom_test_two_sided(n - k, n, 0.5).p_value;
      CHECK(lo == doctest::Approx(hi).epsilon(1e-12));
      CHECK(lo >= prev - 1e-15);
      CHECK(lo <= 1.0);
      prev = lo;
    }
  }
  CHECK_THROWS_AS(binom_test_two_sided(5, 4, 0.5), InvalidInput);
  CHECK_THROWS_AS(binom_test_two_sided(0, 0, 0.5), InvalidInput);
  CHECK_THROWS_AS(binom_test_two_sided(1, 4, 1.0), InvalidInput);
}

TEST_CASE("t and F tails against numerical integration of the densities") {
  for (double df : {1.0, 2.0, 3.0, 4.0836357498523075, 7.5, 30.0, 250.0}) {
    for (double t = 0.0; t <= 12.0; t += 0.37) {
      const double ours = student_t_two_sided(t, df);
      const double ref = oracle::student_t_two_sided_integrated(t, df);
      CHECK_MESSAGE(std::abs(ours - ref) <= 1e-8, "t=" << t << " df=" << df);
      CHECK(student_t_two_sided(-t, df) == ours);
    }
  }
  for (double d1 : {1.0, 2.0, 3.0, 5.0}) {
    for (double d2 : {2.0, 6.0, 17.0, 120.0, 3982.0}) {
      for (double f = 0.01; f <= 30.0; f *= 1.45) {
        const double ours = f_upper_tail(f, d1, d2);
        const double ref = oracle::f_upper_tail_integrated(f, d1, d2);
        CHECK_MESSAGE(std::abs(ours - ref) <= 1e-8, "f=" << f << " d1=" << d1 << " d2=" << d2);
      }
    }
  }
  CHECK(student_t_two_sided(2.5, 3) == doctest::Approx(0.08770664700806555).epsilon(1e-10));
  CHECK(f_upper_tail(4.2, 2, 17) == doctest::Approx(0.03294042820638923).epsilon(1e-10));
  CHECK(student_t_cdf(0.0, 5) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("Welch t-test examples") {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  const auto r = welch_t_test(a, b);
  CHECK(r.statistic == doctest::Approx(-3.6742346141747673).epsilon(1e-12));
  CHECK(*r.df == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(0.021311641128756727).epsilon(1e-9));

  const auto same = welch_t_test(a, a);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == doctest::Approx(1.0));

  const std::vector<double> c{1, 2, 3, 4}, d{2, 4, 6, 9};
  const auto w = welch_t_test(c, d);
  CHECK(w.statistic == doctest::Approx(-1.690641214609248).epsilon(1e-12));
  CHECK(*w.df == doctest::Approx(4.0836357498523075).epsilon(1e-12));
  CHECK(w.p_value == doctest::Approx(0.1647020796280566).epsilon(1e-9));
  const auto s = student_t_test(c, d);
  CHECK(*s.df == 6.0);
  CHECK(s.p_value == doctest::Approx(0.14186036028585047).epsilon(1e-9));
}

TEST_CASE("Welch swap symmetry") {
  const std::vector<double> a{1.5, 2.25, 9, 4, 4.5}, b{0.1, 0.4, 2, 1};
  const auto ab = welch_t_test(a, b), ba = welch_t_test(b, a);
  CHECK(ab.statistic == doctest::Approx(-ba.statistic).epsilon(1e-14));
  CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-14));
  CHECK(*ab.df == doctest::Approx(*ba.df).epsilon(1e-14));
}

TEST_CASE("toxic indicator samples at 0.7422 vs 0.2578, n = 1000") {
  const auto toxic = indicators(742, 1000);
  const auto other = indicators(258, 1000);
  CHECK(welch_t_test(toxic, other).p_value < 1e-4);
}

TEST_CASE("degenerate two-sample cases") {
  const std::vector<double> ones(5, 1.0), zeros(5, 0.0);
  const auto r = welch_t_test(ones, zeros);
  CHECK(r.degenerate);
  CHECK(std::isinf(r.statistic));
  CHECK(r.p_value == 0.0);
  const auto eq = welch_t_test(ones, ones);
  CHECK(eq.degenerate);
  CHECK(eq.p_value == 1.0);
  CHECK_THROWS_AS(welch_t_test(std::vector<double>{1.0}, ones), InvalidInput);
}

TEST_CASE("ANOVA examples") {
  const std::vector<std::vector<double>> g{{1, 2, 3}, {2, 3, 4}, {3, 4, 5}};
  const auto r = one_way_anova(g);
  CHECK(r.statistic == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(*r.df == 2.0);
  CHECK(*r.df2 == 6.0);
  CHECK(r.p_value == doctest::Approx(0.125).epsilon(1e-10));

  const std::vector<std::vector<double>> same{{2, 2, 2}, {2, 2}, {2, 2, 2, 2}};
  const auto s = one_way_anova(same);
  CHECK(s.statistic == 0.0);
  CHECK(s.p_value == 1.0);
  CHECK(s.degenerate);

  const std::vector<std::vector<double>> sep{{1, 1}, {2, 2}};
  const auto d = one_way_anova(sep);
  CHECK(std::isinf(d.statistic));
  CHECK(d.p_value == 0.0);

  CHECK_THROWS_AS(one_way_anova(std::vector<std::vector<double>>{{1, 2, 3}}), InvalidInput);
}

TEST_CASE("F = t^2 on two groups") {
  const std::vector<std::vector<std::vector<double>>> cases = {
      {{1, 2, 3, 4}, {2, 4, 6, 9}},
      {{0.3, 1.7, 2.2, 5.0, 0.1}, {9.0, 7.5, 8.8}},
      {indicators(57, 100), indicators(44, 100)},
  };
  for (const auto& g : cases) {
    const auto f = one_way_anova(g);
    const auto t = student_t_test(g[0], g[1]);
    CHECK(std::abs(f.statistic - t.statistic * t.statistic) <= 1e-9 * f.statistic);
    CHECK(f.p_value == doctest::Approx(t.p_value).epsilon(1e-9));
  }
}

TEST_CASE("mean and variance") {
  const std::vector<double> x{3, 5, 10};
  CHECK(mean(x) == 6.0);
  CHECK(sample_variance(x) == 13.0);
  CHECK(sample_variance(std::vector<double>{4.0}) == 0.0);
}

TEST_CASE("latency summary") {
  SUBCASE("constant sample") {
    std::vector<OutcomeRecord> rs;
    for (ToxicityLevel l : kAllLevels) {
      for (int i = 0; i < 4; ++i) rs.push_back(rec(l, 7));
    }
    const auto s = summarize_latency(rs);
    REQUIRE(s.rows.size() == 4);
    for (const auto& row : s.rows) {
      CHECK(row.mean == 7.0);
      CHECK(row.variance == 0.0);
      if (row.condition == ToxicityLevel::No) {
        CHECK_FALSE(row.pct_increase);
      } else {
        CHECK(*row.pct_increase == 0.0);
      }
    }
  }
  SUBCASE("percent increase vs the same model's baseline") {
    CHECK(percent_increase(11.82, 9.45) == doctest::Approx(25.0794).epsilon(1e-5));
    std::vector<OutcomeRecord> rs{rec(ToxicityLevel::No, 3), rec(ToxicityLevel::No, 5),
                                  rec(ToxicityLevel::No, 10), rec(ToxicityLevel::Mild, 9),
                                  rec(ToxicityLevel::Mild, 9, Side::Pro, Side::Pro, Side::Pro, "x")};
    const auto s = summarize_latency(rs);
    REQUIRE(s.rows.size() == 3);
    CHECK(s.rows[0].model_tag == "m");
    CHECK(s.rows[0].mean == 6.0);
    CHECK(s.rows[0].variance == 13.0);
    CHECK(*s.rows[1].pct_increase == doctest::Approx(50.0));
    CHECK(s.rows[2].model_tag == "x");
    CHECK_FALSE(s.rows[2].pct_increase);
    CHECK(s.missing_baseline == std::vector<std::string>{"x"});
  }
}

TEST_CASE("win-rate tables") {
  SUBCASE("10 debates all won by the starter") {
    std::vector<OutcomeRecord> rs(10, rec(ToxicityLevel::No, 6, Side::Pro, Side::Pro));
    const auto t = win_rate_tables(rs);
    REQUIRE(t.starter.size() == 1);
    CHECK(t.starter[0].win_rate == 1.0);
    CHECK(t.starter[0].test.p_value == doctest::Approx(2.0 / 1024).epsilon(1e-12));
  }
  SUBCASE("complement identity and absent Heavy level") {
    std::vector<OutcomeRecord> rs;
    int i = 0;
    for (ToxicityLevel l : {ToxicityLevel::No, ToxicityLevel::Mild, ToxicityLevel::Moderate}) {
      for (int k = 0; k < 37; ++k, ++i) {
        rs.push_back(rec(l, 6 + k % 5, (i * 7) % 3 == 0 ? Side::Con : Side::Pro,
                         i % 2 ? Side::Pro : Side::Con, l == ToxicityLevel::No
                                                            ? std::nullopt
                                                            : std::optional<Side>(Side::Pro)));
      }
    }
    const auto t = win_rate_tables(rs);
    REQUIRE(t.anova.size() == 1);
    CHECK(t.anova[0].levels.size() == 3);
    for (const auto& row : t.anova[0].levels) {
      CHECK(row.level != ToxicityLevel::Heavy);
      CHECK(row.pro_win_rate + row.con_win_rate == 1.0);
    }
    REQUIRE(t.anova[0].test);
    CHECK(*t.anova[0].test->df == 2.0);
  }
  SUBCASE("toxic rows use win indicators of toxic vs non-toxic agent") {
    std::vector<OutcomeRecord> rs;
    for (int i = 0; i < 10; ++i) {
      rs.push_back(rec(ToxicityLevel::Heavy, 8, i < 7 ? Side::Pro : Side::Con, Side::Pro, Side::Pro));
    }
    const auto t = win_rate_tables(rs);
    REQUIRE(t.toxic.size() == 1);
    CHECK(t.toxic[0].side == Side::Pro);
    CHECK(t.toxic[0].win_rate == doctest::Approx(0.7));
    const auto samples = toxic_indicator_samples(rs, "m", Side::Pro);
    CHECK(welch_t_test(samples.toxic, samples.non_toxic).p_value == t.toxic[0].test.p_value);
  }
}

TEST_CASE("histograms") {
  std::vector<OutcomeRecord> rs{rec(ToxicityLevel::No, 5), rec(ToxicityLevel::No, 5),
                                rec(ToxicityLevel::No, 24)};
  const ToxicityLevel levels[] = {ToxicityLevel::No, ToxicityLevel::Heavy};
  const auto hs = histogram(rs, 23, levels);
  REQUIRE(hs.size() == 2);
  CHECK(hs[0].bins.size() == 23);
  CHECK(hs[0].bins[4] == 2);
  CHECK(hs[0].overflow == 1);
  CHECK(hs[0].total() == 3);
  CHECK(hs[1].condition == ToxicityLevel::Heavy);
  CHECK(hs[1].total() == 0);
  CHECK(std::all_of(hs[1].bins.begin(), hs[1].bins.end(), [](auto v) { return v == 0; }));
  // exactly at the truncation point stays in range
  CHECK(histogram(std::vector<OutcomeRecord>{rec(ToxicityLevel::No, 23)}, 23)[0].bins[22] == 1);
}

TEST_CASE("max rounds by topic") {
  std::vector<OutcomeRecord> rs{rec(ToxicityLevel::No, 5), rec(ToxicityLevel::No, 12),
                                rec(ToxicityLevel::Mild, 9)};
  rs[2].topic_id = "topic-02";
  const auto rows = max_rounds_by_topic(rs);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].max_t_conv == 12);
  CHECK(rows[0].debates == 2);
  CHECK(rows[1].topic_id == "topic-02");
}

TEST_CASE("report on no records is empty but well-formed") {
  const auto r = build_report(std::vector<OutcomeRecord>{});
  CHECK(r.latency.rows.empty());
  CHECK(r.tables.starter.empty());
  CHECK(r.histograms.empty());
  CHECK_FALSE(r.conventions.empty());
}

}  // TEST_SUITE
