#pragma once

#include <cstdint>

namespace vocalis::dist {

// Standard normal CDF.
double normal_cdf(double x);

// Inverse standard normal CDF, accurate to better than 1e-13 over (0,1).
// Throws ConfigError outside the open interval.
double normal_quantile(double p);

// Regularized incomplete beta function I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

// One-sided upper tail P[T > t] of Student's t distribution with df > 0
// degrees of freedom (df need not be an integer).
double student_t_upper_tail(double t, double df);

// log of the binomial coefficient C(n, k).
double log_choose(std::int64_t n, std::int64_t k);

// Binomial(n, p) point mass at k.
double binomial_pmf(std::int64_t n, double p, std::int64_t k);

// P[X >= c] for X ~ Binomial(n, p). Exact tail summation; c outside [0, n]
// clamps to probability 1 or 0.
double binomial_upper_tail(std::int64_t n, double p, std::int64_t c);

} // namespace vocalis::dist
