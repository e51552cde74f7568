#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace pdp {

/// Seedable random source with the variates the samplers need.
///
/// Stream splitting: `Rng(seed, stream)` seeds a 64-bit Mersenne Twister
/// through std::seed_seq over the 32-bit halves of (seed, stream). Replicate
/// r of a run with seed s always uses stream r, so results do not depend on
/// how replicates are scheduled. Variates are derived from raw engine
/// output by fixed formulas, so a given (seed, stream) produces the same
/// values on every standard library.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }

  double normal();
  /// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 uses the u^{1/shape} boost.
  double gamma(double shape);
  /// log of a Gamma(shape, 1) variate; stays finite for tiny shapes.
  double log_gamma_variate(double shape);
  /// Beta(alpha, beta) from two gamma variates.
  double beta(double alpha, double beta);
  /// Beta variate together with its complement 1 - v, each computed
  /// without cancellation.
  struct BetaSplit {
    double v;
    double complement;
  };
  BetaSplit beta_split(double alpha, double beta);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pdp
