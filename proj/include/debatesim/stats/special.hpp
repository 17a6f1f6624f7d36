#pragma once

#include <cstdint>

// Special functions backing the hypothesis tests. Accuracy target: relative
// error at or below 1e-10 over the argument ranges the tests exercise
// (checked against independent references in the unit tests).
namespace debatesim::stats {

// ln Γ(x) for x > 0 (Lanczos, g = 7, nine coefficients).
double log_gamma(double x);

double log_beta(double a, double b);

// ln C(n, k).
double log_choose(std::uint64_t n, std::uint64_t k);

// ln P[X = k] for X ~ Binomial(n, p), 0 < p < 1.
double binomial_log_pmf(std::uint64_t k, std::uint64_t n, double p);

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
// by continued fraction (modified Lentz).
double regularized_incomplete_beta(double a, double b, double x);

// P[|T| >= |t|] for T ~ Student t with `df` degrees of freedom.
double student_t_two_sided(double t, double df);

// P[T <= t].
double student_t_cdf(double t, double df);

// P[F >= f] for F ~ F(d1, d2).
double f_upper_tail(double f, double d1, double d2);

}  // namespace debatesim::stats
