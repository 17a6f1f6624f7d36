#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace debatesim::stats {

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<double> df;   // t df, or numerator df for F
  std::optional<double> df2;  // denominator df for F
  std::vector<std::size_t> n;
  // Set when a convention replaced an undefined statistic (zero variance).
  bool degenerate = false;
};

// Exact two-sided binomial test by the small-p-values method: p is the total
// probability of outcomes no more likely than k (relative slack 1e-7 for
// ties). statistic = k / n.
TestResult binom_test_two_sided(std::uint64_t k, std::uint64_t n, double p0);

// Welch's unequal-variance t-test with Welch–Satterthwaite df.
// Both variances zero: equal means give t = 0, p = 1; different means give
// t = ±inf, p = 0. Either case is flagged degenerate.
TestResult welch_t_test(std::span<const double> a, std::span<const double> b);

// Student's pooled-variance two-sample t-test, df = n_a + n_b - 2.
TestResult student_t_test(std::span<const double> a, std::span<const double> b);

// One-way ANOVA, F = MS_between / MS_within with df (k-1, N-k).
// Zero within-group variance: F = inf, p = 0 if the group means differ,
// otherwise F = 0, p = 1; flagged degenerate.
TestResult one_way_anova(std::span<const std::vector<double>> groups);

double mean(std::span<const double> xs);
// Unbiased (n-1) sample variance; 0 for fewer than two values.
double sample_variance(std::span<const double> xs);

}  // namespace debatesim::stats
