#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pdp/core.hpp"
#include "pdp/rng.hpp"
#include "pdp/samplers.hpp"
#include "pdp/stirling.hpp"

namespace pdp {

/// Categorical base over integer labels with probabilities theta.
class DiscreteBase final : public BaseDistribution {
 public:
  DiscreteBase(std::vector<int> labels, std::vector<double> theta);
  /// Labels 1..K.
  explicit DiscreteBase(std::vector<double> theta);

  double draw(Rng& rng) const override;
  bool discrete() const override { return true; }
  std::optional<double> log_mass(double value) const override;

  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& theta() const { return theta_; }

 private:
  std::vector<int> labels_;
  std::vector<double> theta_;
  std::vector<double> cumulative_;
};

/// log of (b|a)_T / (b)_N * prod_m theta_m^{t_m} S^{n_m}_{t_m,a}:
/// joint probability of the data sequence and its multiplicities.
/// `base_log[m]` is log theta of the value of block m.
double evidence_multiplicities(std::span<const int> counts, const MultiplicityVector& mult,
                               std::span<const double> base_log, const PdParams& params,
                               const LogStirlingTable& table);

/// Joint probability of the data and one table-indicator configuration:
/// the multiplicity form divided by prod_m C(n_m, t_m).
double evidence_indicators(const SizeBiasedPartition& data, const IndicatorVector& indicators,
                           std::span<const double> base_log, const PdParams& params,
                           const LogStirlingTable& table);

enum class GibbsMode { full_scan, indicator_step };

/// p(t_m = t | rest) for t = 1..n (index t-1), where t_rest is the sum of
/// the other blocks' multiplicities. Built by chaining
///   p(t) / p(t-1) = (b + (t_rest + t - 1) a) theta V^n_t.
std::vector<double> multiplicity_conditional(long n, double theta, long t_rest, const PdParams& params,
                                             const StirlingRatioTable& ratios);

/// One Gibbs update of t_m for a block of n_m items.
///
/// full_scan draws directly from multiplicity_conditional. indicator_step
/// picks one item of the block, drops its indicator (so t' = t - 1 with
/// probability t/n), and redraws it with odds
///   (b + (t_rest + t') a) theta V^n_{t'+1} (t' + 1) / (n - t')
/// for r = 1, forcing r = 1 when t' = 0.
int gibbs_resample_multiplicity(int n_m, int current_t, double theta, long t_rest, const PdParams& params,
                                const StirlingRatioTable& ratios, Rng& rng, GibbsMode mode);

/// First three central moments of a random probability vector p with
/// E p = theta, written through two scalar factors:
///   Var p_k = c2 theta_k (1 - theta_k),  Cov = -c2 theta_k1 theta_k2,
///   third moment = c3 E[(1_{X=k1} - theta_k1)(1_{X=k2} - theta_k2)(1_{X=k3} - theta_k3)], X ~ theta.
struct DiscreteMoments {
  std::vector<double> theta;
  double c2;
  double c3;

  double mean(std::size_t k) const { return theta.at(k); }
  double variance(std::size_t k) const;
  double covariance(std::size_t k1, std::size_t k2) const;
  double third(std::size_t k1, std::size_t k2, std::size_t k3) const;
};

/// Moments of PDP(a, b, discrete(theta)): c2 = E sum q^2, c3 = E sum q^3.
DiscreteMoments pdp_moments(std::span<const double> theta, const PdParams& params);
/// Moments of Dirichlet(alpha theta).
DiscreteMoments dirichlet_moments(std::span<const double> theta, double alpha);

/// (a + b) / (1 - a); b exactly when a = 0.
double dirichlet_equivalent_concentration(const PdParams& params);

/// E sum_l q_l^r for q ~ PDD(a, b): prod_{i<r} (i - a) / (i + b), r in 2..5.
double power_sum_expectation(const PdParams& params, int r);

}  // namespace pdp
