#pragma once

#include <span>

namespace pdp {

/// log Gamma(x) for x > 0 (Lanczos approximation, g = 607/128).
double log_gamma(double x);

/// Digamma psi_0(x) for x > 0.
double digamma(double x);

/// Trigamma psi_1(x) for x > 0.
double trigamma(double x);

/// Hurwitz zeta sum_{k>=0} (k+q)^{-s} for s > 1, q > 0.
double hurwitz_zeta(double s, double q);

/// Riemann zeta(s) for s > 1.
double riemann_zeta(double s);

/// log C(n, k) for 0 <= k <= n.
double log_binomial(long n, long k);

/// log(exp(x) + exp(y)), safe for -inf arguments.
double log_add(double x, double y);

/// log sum exp over a range; -inf for an empty or all -inf range.
double log_sum_exp(std::span<const double> xs);

}  // namespace pdp
