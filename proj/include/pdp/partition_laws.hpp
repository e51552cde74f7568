#pragma once

#include <span>
#include <vector>

#include "pdp/core.hpp"
#include "pdp/stirling.hpp"

namespace pdp {

/// log p(partition | a, b) under the Chinese restaurant distribution:
///   (b|a)_M / (b)_N * prod_m (1 - a)_{n_m - 1}.
/// The common leading factor b of (b|a)_M and (b)_N is cancelled, so the
/// law stays defined for negative b and for b = 0.
double crd_log_prob(const SizeBiasedPartition& partition, const PdParams& params);
double crd_log_prob(std::span<const int> counts, const PdParams& params);

/// log[(b|a)_M / (b)_N] for M >= 1, N >= 1, evaluated as
/// log[(b+a|a)_{M-1} / (b+1)_{N-1}].
double log_crd_normalizer(long m, long n, const PdParams& params);

/// p(M | N, a, b) = (b|a)_M / (b)_N * S^N_{M,a} for M = 1..N (index M-1).
/// `table` must have discount a and cover n <= N, t <= N.
std::vector<double> partition_size_pmf(long n, const PdParams& params, const LogStirlingTable& table);

/// Expected number of blocks among N items, closed form.
double expected_M(const PdParams& params, long n);
/// Variance of the number of blocks, closed form.
double var_M(const PdParams& params, long n);

/// Large-N, b >> a approximations of expected_M and var_M.
double approx_expected_M(const PdParams& params, long n);
double approx_var_M(const PdParams& params, long n);

/// sum_k 1 - (1 - q_k)^N over a finite probability vector.
double expected_M_oracle(std::span<const double> q, long n);

/// Upper bound on E[M] when q_k = r^{k-1} (1 - r).
double geometric_bound(double r, long n);
/// Upper bound on E[M] when q_k = k^{-s} / zeta(s).
double dirichlet_series_bound(double s, long n);

enum class SeriesKind { geometric, dirichlet };

/// E[M] for the infinite geometric or Dirichlet series. Terms are summed
/// explicitly until N q_k < 1e-9 (at most `max_terms`); the remaining tail
/// is bounded above by N * (tail mass), so `value` never underestimates.
struct SeriesExpectation {
  double value;
  double tail_allowance;
  long terms;
};
SeriesExpectation series_expected_M(SeriesKind kind, double parameter, long n, long max_terms = 10'000'000);

/// log of (1 / (b)_N) prod_k (alpha_k)_{n_k} with b = sum alpha_k.
double dirichlet_multinomial_log_prob(std::span<const int> counts, std::span<const double> alpha);

/// Evidence of a sample from a PDP with non-atomic base: crd_log_prob plus
/// the base log-density of each distinct value.
double evidence_nonatomic(const SizeBiasedPartition& partition, std::span<const double> base_log_values,
                          const PdParams& params);

}  // namespace pdp
