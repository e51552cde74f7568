#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pdp/core.hpp"
#include "pdp/rng.hpp"

namespace pdp {

enum class WeightOrder { size_biased, sorted };

/// Stopping rule for stick-breaking: stop once the unbroken remainder is
/// below `mass_epsilon` or `max_atoms` weights exist, whichever comes first.
struct Truncation {
  double mass_epsilon = 1e-12;
  std::size_t max_atoms = 1'000'000;
};

/// Finite prefix of an infinite probability vector plus the mass not yet
/// assigned to any atom.
class WeightVector {
 public:
  WeightVector(std::vector<double> weights, double residual, WeightOrder order);

  const std::vector<double>& weights() const { return weights_; }
  double residual() const { return residual_; }
  WeightOrder order() const { return order_; }
  std::size_t size() const { return weights_.size(); }

 private:
  std::vector<double> weights_;
  double residual_;
  WeightOrder order_;
};

/// GEM(a, b): p_k = V_k prod_{i<k} (1 - V_i), V_k ~ Beta(1 - a, b + k a).
WeightVector sample_gem(const PdParams& params, Rng& rng, Truncation truncation = {});

/// PDD(a, b): GEM weights sorted nonincreasing.
WeightVector sample_pdd(const PdParams& params, Rng& rng, Truncation truncation = {});

/// Sorts a size-biased weight vector into PDD order.
WeightVector sort_weights(WeightVector gem);

/// Stick-breaking that grows on demand, so that atom indices are drawn
/// exactly from GEM(a, b) without truncation bias.
class GemStream {
 public:
  explicit GemStream(const PdParams& params) : params_(params) {}

  /// Index (0-based) of the atom hit by a fresh uniform draw.
  std::size_t draw(Rng& rng);
  void extend(Rng& rng);

  const std::vector<double>& weights() const { return weights_; }
  double residual() const { return residual_; }

 private:
  PdParams params_;
  std::vector<double> weights_;
  double residual_ = 1.0;
};

/// Sequential seating state of a Chinese restaurant process. The weights
/// below are the unnormalized transition kernel; `seat` and `predictive`
/// both read them.
class CrpSeating {
 public:
  explicit CrpSeating(const PdParams& params) : params_(params) {}
  /// Starts from existing block counts (items are laid out block by block).
  CrpSeating(const PdParams& params, std::span<const int> counts);

  /// b + M a
  double new_block_weight() const;
  /// n_m - a for 1-based block m
  double block_weight(int m) const;
  /// b + N
  double total_weight() const;

  /// Seats the next customer, returning its 1-based block.
  int seat(Rng& rng);

  const std::vector<int>& counts() const { return counts_; }
  const std::vector<int>& assignments() const { return assignments_; }
  int items() const { return static_cast<int>(assignments_.size()); }
  int blocks() const { return static_cast<int>(counts_.size()); }

 private:
  PdParams params_;
  std::vector<int> counts_;
  std::vector<int> assignments_;
};

/// CRP(a, b) partition of N items in size-biased form.
SizeBiasedPartition sample_crp(const PdParams& params, int n, Rng& rng);

/// Sampling distribution of a PDP's values.
class BaseDistribution {
 public:
  virtual ~BaseDistribution() = default;
  virtual double draw(Rng& rng) const = 0;
  virtual bool discrete() const = 0;
  /// log H(x) for discrete bases; empty for non-atomic ones.
  virtual std::optional<double> log_mass(double value) const = 0;
};

/// Non-atomic Uniform(0, 1) base.
class UniformBase final : public BaseDistribution {
 public:
  double draw(Rng& rng) const override { return rng.uniform(); }
  bool discrete() const override { return false; }
  std::optional<double> log_mass(double) const override { return std::nullopt; }
};

struct PdpSample {
  std::vector<double> values;
  SizeBiasedPartition partition;
};

/// N draws from PDP(a, b, H) with the weights marginalised out: a CRP
/// partition with one base draw per block.
PdpSample sample_pdp(const PdParams& params, const BaseDistribution& base, int n, Rng& rng);

/// Dirichlet(n_1 - a, ..., n_M - a, b + M a) parameters of the posterior
/// weights (p_1, ..., p_M, remainder) given a partition.
std::vector<double> posterior_dirichlet_params(const PdParams& params, const SizeBiasedPartition& partition);

struct BetaParams {
  double alpha;
  double beta;
};

/// Posterior stick Beta(n_m - a, b + m a + sum_{i>m} n_i) for m = 1..M.
std::vector<BetaParams> posterior_stick_params(const PdParams& params, const SizeBiasedPartition& partition);

struct Predictive {
  double new_block;
  std::vector<double> blocks;
};

/// Probabilities that the next item opens a new block or joins block m.
Predictive predictive(const PdParams& params, std::span<const int> counts);
Predictive predictive(const PdParams& params, const SizeBiasedPartition& partition);

}  // namespace pdp
