#include "pdp/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pdp/error.hpp"

namespace pdp {

namespace {

// Neumaier summation.
double compensated_sum(std::span<const double> xs) {
  double sum = 0.0;
  double carry = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + carry;
}

}  // namespace

WeightVector::WeightVector(std::vector<double> weights, double residual, WeightOrder order)
    : weights_(std::move(weights)), residual_(residual), order_(order) {
  if (!(residual_ >= 0.0)) throw DomainError("residual mass must be non-negative");
  for (double w : weights_) {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("weights must lie in [0, 1]");
  }
  if (std::abs(compensated_sum(weights_) + residual_ - 1.0) > 1e-12) throw DomainError("weights and residual must sum to 1");
  if (order_ == WeightOrder::sorted && !std::is_sorted(weights_.begin(), weights_.end(), std::greater<>())) {
    throw DomainError("sorted weight vector is not nonincreasing");
  }
}

WeightVector sample_gem(const PdParams& params, Rng& rng, Truncation truncation) {
  if (!(truncation.mass_epsilon > 0.0) || truncation.max_atoms == 0) {
    throw DomainError("truncation must be positive");
  }
  std::vector<double> weights;
  double remaining = 1.0;
  while (remaining >= truncation.mass_epsilon && weights.size() < truncation.max_atoms) {
    const double k = static_cast<double>(weights.size() + 1);
    const auto stick = rng.beta_split(1.0 - params.a(), params.b() + k * params.a());
    weights.push_back(stick.v * remaining);
    remaining *= stick.complement;
  }
  // The running product is the accurate residual; fall back to the
  // complement of the weights only if rounding drift became visible.
  const double leftover = 1.0 - compensated_sum(weights);
  if (std::abs(leftover - remaining) > 1e-13) remaining = std::max(0.0, leftover);
  return WeightVector(std::move(weights), remaining, WeightOrder::size_biased);
}

WeightVector sort_weights(WeightVector gem) {
  std::vector<double> w = gem.weights();
  std::sort(w.begin(), w.end(), std::greater<>());
  return WeightVector(std::move(w), gem.residual(), WeightOrder::sorted);
}

WeightVector sample_pdd(const PdParams& params, Rng& rng, Truncation truncation) {
  return sort_weights(sample_gem(params, rng, truncation));
}

void GemStream::extend(Rng& rng) {
  const double k = static_cast<double>(weights_.size() + 1);
  const auto stick = rng.beta_split(1.0 - params_.a(), params_.b() + k * params_.a());
  weights_.push_back(stick.v * residual_);
  residual_ *= stick.complement;
}

std::size_t GemStream::draw(Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t k = 0;
  while (true) {
    if (k == weights_.size()) {
      if (residual_ <= 0.0) return weights_.size() - 1;
      extend(rng);
    }
    cumulative += weights_[k];
    if (u < cumulative) return k;
    ++k;
  }
}

CrpSeating::CrpSeating(const PdParams& params, std::span<const int> counts) : params_(params) {
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (counts[m] < 1) throw DomainError("block counts must be positive");
    counts_.push_back(counts[m]);
    assignments_.insert(assignments_.end(), static_cast<std::size_t>(counts[m]), static_cast<int>(m) + 1);
  }
}

double CrpSeating::new_block_weight() const {
  return params_.b() + static_cast<double>(counts_.size()) * params_.a();
}

double CrpSeating::block_weight(int m) const {
  return static_cast<double>(counts_.at(static_cast<std::size_t>(m - 1))) - params_.a();
}

double CrpSeating::total_weight() const { return params_.b() + static_cast<double>(assignments_.size()); }

int CrpSeating::seat(Rng& rng) {
  int block;
  if (assignments_.empty()) {
    // The first customer opens a table whatever b is (b = 0 included).
    block = 1;
  } else if (rng.uniform() * total_weight() < new_block_weight()) {
    block = static_cast<int>(counts_.size()) + 1;
  } else {
    // Existing block with probability proportional to n_m - a: pick a
    // uniform earlier customer (proportional to n_m) and accept with
    // probability (n_m - a) / n_m.
    while (true) {
      const int m = assignments_[rng.below(assignments_.size())];
      const double n_m = counts_[static_cast<std::size_t>(m - 1)];
      if (params_.a() == 0.0 || rng.uniform() * n_m < block_weight(m)) {
        block = m;
        break;
      }
    }
  }
  if (block > static_cast<int>(counts_.size())) counts_.push_back(0);
  ++counts_[static_cast<std::size_t>(block - 1)];
  assignments_.push_back(block);
  return block;
}

SizeBiasedPartition sample_crp(const PdParams& params, int n, Rng& rng) {
  if (n < 1) throw DomainError("CRP sample size must be at least 1");
  CrpSeating seating(params);
  for (int i = 0; i < n; ++i) seating.seat(rng);
  return SizeBiasedPartition(seating.assignments());
}

PdpSample sample_pdp(const PdParams& params, const BaseDistribution& base, int n, Rng& rng) {
  if (n < 1) throw DomainError("PDP sample size must be at least 1");
  CrpSeating seating(params);
  std::vector<double> atoms;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int block = seating.seat(rng);
    if (block > static_cast<int>(atoms.size())) atoms.push_back(base.draw(rng));
    values.push_back(atoms[static_cast<std::size_t>(block - 1)]);
  }
  return {std::move(values), SizeBiasedPartition(seating.assignments())};
}

std::vector<double> posterior_dirichlet_params(const PdParams& params, const SizeBiasedPartition& partition) {
  std::vector<double> out;
  out.reserve(partition.counts().size() + 1);
  for (int n_m : partition.counts()) out.push_back(n_m - params.a());
  out.push_back(params.b() + partition.size() * params.a());
  return out;
}

std::vector<BetaParams> posterior_stick_params(const PdParams& params, const SizeBiasedPartition& partition) {
  const auto& counts = partition.counts();
  std::vector<BetaParams> out(counts.size());
  long tail = 0;
  for (std::size_t i = counts.size(); i-- > 0;) {
    const double m = static_cast<double>(i + 1);
    out[i] = {counts[i] - params.a(), params.b() + m * params.a() + static_cast<double>(tail)};
    tail += counts[i];
  }
  return out;
}

Predictive predictive(const PdParams& params, std::span<const int> counts) {
  const CrpSeating seating(params, counts);
  if (seating.items() == 0) return {1.0, {}};
  const double total = seating.total_weight();
  Predictive out{seating.new_block_weight() / total, {}};
  out.blocks.reserve(counts.size());
  for (int m = 1; m <= seating.blocks(); ++m) out.blocks.push_back(seating.block_weight(m) / total);
  return out;
}

Predictive predictive(const PdParams& params, const SizeBiasedPartition& partition) {
  return predictive(params, std::span<const int>(partition.counts()));
}

}  // namespace pdp
