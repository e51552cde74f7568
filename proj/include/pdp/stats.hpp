#pragma once

#include <cstddef>
#include <span>

namespace pdp::stats {

struct ChiSquare {
  double statistic;
  int dof;
  double p_value;
};

/// Pearson goodness-of-fit of observed counts against expected probabilities.
/// Categories with zero expected mass must have zero count.
ChiSquare chi_square(std::span<const long> observed, std::span<const double> expected_prob);

/// sum_i |observed_i / total - expected_i|
double l1_distance(std::span<const long> observed, std::span<const double> expected_prob);
double total_variation(std::span<const double> p, std::span<const double> q);

/// Streaming mean and standard error (Welford).
class Accumulator {
 public:
  void add(double x);
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;
  double std_error() const;
  /// |mean - target| / std_error
  double z_score(double target) const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace pdp::stats
