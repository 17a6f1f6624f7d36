#include "debatesim/stats/tests.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "debatesim/stats/special.hpp"

namespace debatesim::stats {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_two(std::span<const double> xs, const char* name) {
  if (xs.size() < 2) throw InvalidInput(std::string("sample ") + name + " needs at least 2 values");
}

TestResult degenerate_t(double diff, std::size_t na, std::size_t nb, double df) {
  TestResult r;
  r.degenerate = true;
  r.df = df;
  r.n = {na, nb};
  if (diff == 0.0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
  } else {
    r.statistic = diff > 0 ? kInf : -kInf;
    r.p_value = 0.0;
  }
  return r;
}

}  // namespace

double mean(std::span<const double> xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

TestResult binom_test_two_sided(std::uint64_t k, std::uint64_t n, double p0) {
  if (n == 0) throw InvalidInput("binomial test needs n >= 1");
  if (k > n) throw InvalidInput("binomial test needs k <= n");
  if (!(p0 > 0.0 && p0 < 1.0)) throw InvalidInput("binomial test needs 0 < p0 < 1");

  const double log_obs = binomial_log_pmf(k, n, p0);
  const double threshold = log_obs + std::log1p(1e-7);
  double p = 0.0;
  std::uint64_t included = 0;
  for (std::uint64_t i = 0; i <= n; ++i) {
    const double lp = binomial_log_pmf(i, n, p0);
    if (lp <= threshold) {
      p += std::exp(lp);
      ++included;
    }
  }
  TestResult r;
  r.statistic = static_cast<double>(k) / static_cast<double>(n);
  r.p_value = included == n + 1 ? 1.0 : std::min(1.0, p);
  r.n = {static_cast<std::size_t>(n)};
  return r;
}

TestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  require_two(a, "a");
  require_two(b, "b");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double diff = mean(a) - mean(b);
  const double qa = sample_variance(a) / na;
  const double qb = sample_variance(b) / nb;
  const double se2 = qa + qb;
  if (se2 == 0.0) return degenerate_t(diff, a.size(), b.size(), na + nb - 2.0);

  TestResult r;
  r.statistic = diff / std::sqrt(se2);
  r.df = se2 * se2 / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
  r.p_value = student_t_two_sided(r.statistic, *r.df);
  r.n = {a.size(), b.size()};
  return r;
}

TestResult student_t_test(std::span<const double> a, std::span<const double> b) {
  require_two(a, "a");
  require_two(b, "b");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double diff = mean(a) - mean(b);
  const double df = na + nb - 2.0;
  const double pooled =
      ((na - 1.0) * sample_variance(a) + (nb - 1.0) * sample_variance(b)) / df;
  const double se2 = pooled * (1.0 / na + 1.0 / nb);
  if (se2 == 0.0) return degenerate_t(diff, a.size(), b.size(), df);

  TestResult r;
  r.statistic = diff / std::sqrt(se2);
  r.df = df;
  r.p_value = student_t_two_sided(r.statistic, df);
  r.n = {a.size(), b.size()};
  return r;
}

TestResult one_way_anova(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw InvalidInput("ANOVA needs at least 2 groups");
  std::size_t total = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw InvalidInput("ANOVA needs at least 2 observations per group");
    total += g.size();
    grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
  }
  const double grand_mean = grand_sum / static_cast<double>(total);

  double ss_between = 0.0;
  double ss_within = 0.0;
  double spread = 0.0;  // largest distance of a group mean from the grand mean
  TestResult r;
  for (const auto& g : groups) {
    const double m = mean(g);
    spread = std::max(spread, std::fabs(m - grand_mean));
    ss_between += static_cast<double>(g.size()) * (m - grand_mean) * (m - grand_mean);
    for (double x : g) ss_within += (x - m) * (x - m);
    r.n.push_back(g.size());
  }
  const double df1 = static_cast<double>(groups.size() - 1);
  const double df2 = static_cast<double>(total - groups.size());
  r.df = df1;
  r.df2 = df2;

  if (ss_within == 0.0 || df2 == 0.0) {
    r.degenerate = true;
    const bool means_differ = spread > 1e-12 * std::max(1.0, std::fabs(grand_mean));
    r.statistic = means_differ ? kInf : 0.0;
    r.p_value = means_differ ? 0.0 : 1.0;
    return r;
  }
  r.statistic = (ss_between / df1) / (ss_within / df2);
  r.p_value = f_upper_tail(r.statistic, df1, df2);
  return r;
}

}  // namespace debatesim::stats
