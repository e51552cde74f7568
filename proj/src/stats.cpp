#include "pdp/stats.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/chi_squared.hpp>

#include "pdp/error.hpp"

namespace pdp::stats {

ChiSquare chi_square(std::span<const long> observed, std::span<const double> expected_prob) {
  if (observed.size() != expected_prob.size() || observed.size() < 2) {
    throw DomainError("chi-square needs matching vectors with at least two categories");
  }
  double total = 0.0;
  for (long o : observed) total += static_cast<double>(o);
  if (!(total > 0.0)) throw DomainError("chi-square needs observations");
  double stat = 0.0;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected_prob[i] * total;
    if (e <= 0.0) {
      if (observed[i] != 0) return {std::numeric_limits<double>::infinity(), 0, 0.0};
      continue;
    }
    const double d = static_cast<double>(observed[i]) - e;
    stat += d * d / e;
    ++cells;
  }
  const int dof = cells - 1;
  if (dof < 1) return {stat, dof, 1.0};
  const boost::math::chi_squared dist(dof);
  return {stat, dof, boost::math::cdf(boost::math::complement(dist, stat))};
}

double l1_distance(std::span<const long> observed, std::span<const double> expected_prob) {
  if (observed.size() != expected_prob.size()) throw DomainError("L1 distance needs matching vectors");
  double total = 0.0;
  for (long o : observed) total += static_cast<double>(o);
  double acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc += std::abs(static_cast<double>(observed[i]) / total - expected_prob[i]);
  }
  return acc;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DomainError("total variation needs matching vectors");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return 0.5 * acc;
}

void Accumulator::add(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

double Accumulator::variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

double Accumulator::std_error() const { return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

double Accumulator::z_score(double target) const {
  const double se = std_error();
  if (se == 0.0) return mean_ == target ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(mean_ - target) / se;
}

}  // namespace pdp::stats
