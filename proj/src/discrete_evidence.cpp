#include "pdp/discrete_evidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pdp/error.hpp"
#include "pdp/partition_laws.hpp"
#include "pdp/special_functions.hpp"

namespace pdp {

DiscreteBase::DiscreteBase(std::vector<int> labels, std::vector<double> theta)
    : labels_(std::move(labels)), theta_(std::move(theta)) {
  if (labels_.empty() || labels_.size() != theta_.size()) {
    throw DomainError("discrete base needs one probability per label");
  }
  for (double t : theta_) {
    if (!(t > 0.0)) throw DomainError("base probabilities must be positive");
  }
  auto sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("base labels must be distinct");
  }
  cumulative_.resize(theta_.size());
  std::partial_sum(theta_.begin(), theta_.end(), cumulative_.begin());
  if (std::abs(cumulative_.back() - 1.0) > 1e-12) throw DomainError("base probabilities must sum to 1");
}

namespace {
std::vector<int> default_labels(std::size_t k) {
  std::vector<int> out(k);
  std::iota(out.begin(), out.end(), 1);
  return out;
}
}  // namespace

DiscreteBase::DiscreteBase(std::vector<double> theta) : DiscreteBase(default_labels(theta.size()), theta) {}

double DiscreteBase::draw(Rng& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), labels_.size() - 1);
  return labels_[k];
}

std::optional<double> DiscreteBase::log_mass(double value) const {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (static_cast<double>(labels_[k]) == value) return std::log(theta_[k]);
  }
  return -std::numeric_limits<double>::infinity();
}

double evidence_multiplicities(std::span<const int> counts, const MultiplicityVector& mult,
                               std::span<const double> base_log, const PdParams& params,
                               const LogStirlingTable& table) {
  mult.check_against(counts);
  if (base_log.size() != counts.size()) throw DomainError("need one base log-mass per block");
  if (table.a() != params.a()) throw DomainError("Stirling table discount does not match a");
  long n = 0;
  double acc = 0.0;
  for (std::size_t m = 0; m < counts.size(); ++m) {
    const int t = mult.values()[m];
    n += counts[m];
    acc += t * base_log[m] + table.log_s(counts[m], t);
  }
  return acc + log_crd_normalizer(mult.total(), n, params);
}

double evidence_indicators(const SizeBiasedPartition& data, const IndicatorVector& indicators,
                           std::span<const double> base_log, const PdParams& params,
                           const LogStirlingTable& table) {
  const MultiplicityVector mult = indicators.multiplicities(data);
  double acc = evidence_multiplicities(data.counts(), mult, base_log, params, table);
  for (std::size_t m = 0; m < data.counts().size(); ++m) {
    acc -= log_binomial(data.counts()[m], mult.values()[m]);
  }
  return acc;
}

namespace {

void check_ratios(long n, long t, const PdParams& params, const StirlingRatioTable& ratios) {
  if (ratios.a() != params.a()) throw DomainError("ratio table discount does not match a");
  if (t >= 2 && !ratios.covers(n, t)) throw CoverageError("ratio table does not cover V^n_t", n, t);
}

void check_theta(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must lie in (0, 1]");
}

}  // namespace

std::vector<double> multiplicity_conditional(long n, double theta, long t_rest, const PdParams& params,
                                             const StirlingRatioTable& ratios) {
  if (n < 1) throw DomainError("block size must be at least 1");
  if (t_rest < 0) throw DomainError("t_rest must be non-negative");
  check_theta(theta);
  check_ratios(n, n, params, ratios);
  std::vector<double> logp(static_cast<std::size_t>(n));
  logp[0] = 0.0;
  const double log_theta = std::log(theta);
  for (long t = 2; t <= n; ++t) {
    const double coupling = params.b() + static_cast<double>(t_rest + t - 1) * params.a();
    logp[static_cast<std::size_t>(t - 1)] =
        logp[static_cast<std::size_t>(t - 2)] + std::log(coupling) + log_theta + std::log(ratios.v(n, t));
  }
  const double total = log_sum_exp(logp);
  for (double& v : logp) v = std::exp(v - total);
  return logp;
}

int gibbs_resample_multiplicity(int n_m, int current_t, double theta, long t_rest, const PdParams& params,
                                const StirlingRatioTable& ratios, Rng& rng, GibbsMode mode) {
  if (n_m < 1 || current_t < 1 || current_t > n_m) throw DomainError("need 1 <= t <= n");
  if (n_m == 1) return 1;
  if (mode == GibbsMode::full_scan) {
    const auto p = multiplicity_conditional(n_m, theta, t_rest, params, ratios);
    double u = rng.uniform();
    for (std::size_t i = 0; i < p.size(); ++i) {
      u -= p[i];
      if (u < 0.0) return static_cast<int>(i) + 1;
    }
    return n_m;
  }
  check_theta(theta);
  int t = current_t;
  if (rng.below(static_cast<std::uint64_t>(n_m)) < static_cast<std::uint64_t>(t)) --t;
  if (t == 0) return 1;
  check_ratios(n_m, t + 1, params, ratios);
  const double coupling = params.b() + static_cast<double>(t_rest + t) * params.a();
  const double odds = coupling * theta * ratios.v(n_m, t + 1) * (t + 1) / static_cast<double>(n_m - t);
  return rng.uniform() * (1.0 + odds) < odds ? t + 1 : t;
}

double DiscreteMoments::variance(std::size_t k) const {
  const double t = theta.at(k);
  return c2 * t * (1.0 - t);
}

double DiscreteMoments::covariance(std::size_t k1, std::size_t k2) const {
  if (k1 == k2) return variance(k1);
  return -c2 * theta.at(k1) * theta.at(k2);
}

double DiscreteMoments::third(std::size_t k1, std::size_t k2, std::size_t k3) const {
  // Sort so that equal indices are adjacent.
  std::size_t k[3] = {k1, k2, k3};
  std::sort(k, k + 3);
  const double t0 = theta.at(k[0]);
  const double t1 = theta.at(k[1]);
  const double t2 = theta.at(k[2]);
  if (k[0] == k[2]) return c3 * t0 * (1.0 - t0) * (1.0 - 2.0 * t0);
  if (k[0] == k[1]) return c3 * (2.0 * t0 - 1.0) * t0 * t2;
  if (k[1] == k[2]) return c3 * (2.0 * t1 - 1.0) * t1 * t0;
  return 2.0 * c3 * t0 * t1 * t2;
}

namespace {
void check_probability_vector(std::span<const double> theta) {
  if (theta.empty()) throw DomainError("theta must be nonempty");
  double s = 0.0;
  for (double t : theta) {
    if (!(t > 0.0)) throw DomainError("theta entries must be positive");
    s += t;
  }
  if (std::abs(s - 1.0) > 1e-12) throw DomainError("theta must sum to 1");
}
}  // namespace

DiscreteMoments pdp_moments(std::span<const double> theta, const PdParams& params) {
  check_probability_vector(theta);
  return {std::vector<double>(theta.begin(), theta.end()), power_sum_expectation(params, 2),
          power_sum_expectation(params, 3)};
}

DiscreteMoments dirichlet_moments(std::span<const double> theta, double alpha) {
  check_probability_vector(theta);
  if (!(alpha > 0.0)) throw DomainError("Dirichlet concentration must be positive");
  return {std::vector<double>(theta.begin(), theta.end()), 1.0 / (alpha + 1.0),
          2.0 / ((alpha + 1.0) * (alpha + 2.0))};
}

double dirichlet_equivalent_concentration(const PdParams& params) {
  if (params.a() == 0.0) return params.b();
  return (params.a() + params.b()) / (1.0 - params.a());
}

double power_sum_expectation(const PdParams& params, int r) {
  if (r < 2 || r > 5) throw DomainError("power sum order must lie in 2..5");
  double acc = 1.0;
  for (int i = 1; i < r; ++i) acc *= (i - params.a()) / (i + params.b());
  return acc;
}

}  // namespace pdp
