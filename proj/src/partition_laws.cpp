#include "pdp/partition_laws.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pdp/error.hpp"
#include "pdp/special_functions.hpp"

namespace pdp {

namespace {

// Beyond this N the log ratios of Pochhammer symbols switch from direct
// log1p sums to log-gamma differences.
constexpr long kDirectRatioLimit = 1'000'000;

// log[(x + d)_N / (x)_N] for x > 0, d >= 0.
double log_shift_ratio(double x, double d, long n) {
  if (n <= kDirectRatioLimit) {
    double acc = 0.0;
    for (long i = 0; i < n; ++i) acc += std::log1p(d / (x + static_cast<double>(i)));
    return acc;
  }
  const auto nd = static_cast<double>(n);
  return (log_gamma(x + d + nd) - log_gamma(x + d)) - (log_gamma(x + nd) - log_gamma(x));
}

void check_n(long n) {
  if (n < 1) throw DomainError("sample size N must be at least 1");
}

}  // namespace

double log_crd_normalizer(long m, long n, const PdParams& params) {
  if (m < 1 || n < 1 || m > n) throw DomainError("normalizer needs 1 <= M <= N");
  const double a = params.a();
  const double b = params.b();
  return log_pochhammer_inc(b + a, a, m - 1) - log_pochhammer(b + 1.0, n - 1);
}

double crd_log_prob(std::span<const int> counts, const PdParams& params) {
  if (counts.empty()) throw DomainError("partition has no blocks");
  long n = 0;
  double acc = 0.0;
  for (int c : counts) {
    if (c < 1) throw DomainError("block counts must be positive");
    n += c;
    acc += log_pochhammer(1.0 - params.a(), c - 1);
  }
  return acc + log_crd_normalizer(static_cast<long>(counts.size()), n, params);
}

double crd_log_prob(const SizeBiasedPartition& partition, const PdParams& params) {
  return crd_log_prob(std::span<const int>(partition.counts()), params);
}

std::vector<double> partition_size_pmf(long n, const PdParams& params, const LogStirlingTable& table) {
  check_n(n);
  if (table.a() != params.a()) throw DomainError("Stirling table discount does not match a");
  if (table.n_max() < n || table.t_max() < n) {
    throw CoverageError("Stirling table too small for the partition-size law", n, n);
  }
  std::vector<double> logp(static_cast<std::size_t>(n));
  for (long m = 1; m <= n; ++m) {
    logp[static_cast<std::size_t>(m - 1)] = log_crd_normalizer(m, n, params) + table.log_s(n, m);
  }
  const double total = log_sum_exp(logp);
  if (!(std::abs(total) <= 1e-6)) {
    throw NumericalInstability("partition-size law sums to exp(" + std::to_string(total) +
                               "); Stirling table is inconsistent");
  }
  // Returned unnormalized so callers can see how far the sum is from 1.
  for (double& v : logp) v = std::exp(v);
  return logp;
}

double expected_M(const PdParams& params, long n) {
  check_n(n);
  const double a = params.a();
  const double b = params.b();
  if (a == 0.0) return b * (digamma(b + static_cast<double>(n)) - digamma(b));
  if (b > 0.0) return b / a * std::expm1(log_shift_ratio(b, a, n));
  // b <= 0: (b/a) (b+a)_N / (b)_N = (b+a)_N / (a (b+1)_{N-1})
  const double r1 = std::exp(log_pochhammer(b + a, n) - log_pochhammer(b + 1.0, n - 1)) / a;
  return r1 - b / a;
}

double var_M(const PdParams& params, long n) {
  check_n(n);
  if (n == 1) return 0.0;
  const double a = params.a();
  const double b = params.b();
  if (a == 0.0) {
    const double e = expected_M(params, n);
    return e + b * b * (trigamma(b + static_cast<double>(n)) - trigamma(b));
  }
  if (b > 0.0) {
    // With r_k = (b + k a)_N / (b)_N = 1 + e_k:
    // Var = (b / a^2) [(a + b) e_2 - (a + 2b) e_1 - b e_1^2]
    const double e1 = std::expm1(log_shift_ratio(b, a, n));
    const double e2 = std::expm1(log_shift_ratio(b, 2.0 * a, n));
    return b / (a * a) * ((a + b) * e2 - (a + 2.0 * b) * e1 - b * e1 * e1);
  }
  const double lden = log_pochhammer(b + 1.0, n - 1);
  const double r1 = std::exp(log_pochhammer(b + a, n) - lden) / a;
  const double r2 = (a + b) * std::exp(log_pochhammer(b + 2.0 * a, n) - lden) / (a * a);
  return r2 - r1 - r1 * r1;
}

double approx_expected_M(const PdParams& params, long n) {
  check_n(n);
  const double a = params.a();
  const double b = params.b();
  if (!(b > 0.0)) throw DomainError("approximation needs b > 0");
  const auto nd = static_cast<double>(n);
  if (a == 0.0) return b * std::log1p(nd / b);
  return b / a * std::pow(1.0 + nd / b, a) * std::exp(a * nd / (2.0 * b * (b + nd))) - b / a;
}

double approx_var_M(const PdParams& params, long n) {
  check_n(n);
  const double a = params.a();
  const double b = params.b();
  if (!(b > 0.0)) throw DomainError("approximation needs b > 0");
  const auto nd = static_cast<double>(n);
  if (a == 0.0) return b * std::log1p(nd / b);
  return b / a * std::pow(1.0 + nd / b, 2.0 * a) * std::exp(a * nd / (b * (b + nd)));
}

double expected_M_oracle(std::span<const double> q, long n) {
  check_n(n);
  double acc = 0.0;
  for (double qk : q) {
    if (!(qk >= 0.0 && qk <= 1.0)) throw DomainError("probabilities must lie in [0, 1]");
    acc += (qk == 1.0) ? 1.0 : -std::expm1(static_cast<double>(n) * std::log1p(-qk));
  }
  return acc;
}

double geometric_bound(double r, long n) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("geometric ratio must lie in (0, 1)");
  check_n(n);
  const double l = -std::log(r);
  return std::log(static_cast<double>(n)) / l + (1.0 + 2.0 * l + std::log(l)) / l;
}

double dirichlet_series_bound(double s, long n) {
  if (!(s > 1.0)) throw DomainError("Dirichlet series exponent must exceed 1");
  check_n(n);
  return 1.5 + s / (s - 1.0) * std::pow(static_cast<double>(n) / riemann_zeta(s), 1.0 / s);
}

SeriesExpectation series_expected_M(SeriesKind kind, double parameter, long n, long max_terms) {
  check_n(n);
  if (max_terms < 1) throw DomainError("max_terms must be positive");
  const auto nd = static_cast<double>(n);
  double sum = 0.0;
  long k = 0;
  if (kind == SeriesKind::geometric) {
    const double r = parameter;
    if (!(r > 0.0 && r < 1.0)) throw DomainError("geometric ratio must lie in (0, 1)");
    double tail = 1.0;  // r^k
    while (k < max_terms) {
      const double q = tail * (1.0 - r);
      if (nd * q < 1e-9) break;
      sum += -std::expm1(nd * std::log1p(-q));
      tail *= r;
      ++k;
    }
    return {sum + nd * tail, nd * tail, k};
  }
  const double s = parameter;
  if (!(s > 1.0)) throw DomainError("Dirichlet series exponent must exceed 1");
  const double zeta = riemann_zeta(s);
  while (k < max_terms) {
    const double q = std::pow(static_cast<double>(k + 1), -s) / zeta;
    if (nd * q < 1e-9) break;
    sum += -std::expm1(nd * std::log1p(-q));
    ++k;
  }
  const double tail = hurwitz_zeta(s, static_cast<double>(k + 1)) / zeta;
  return {sum + nd * tail, nd * tail, k};
}

double dirichlet_multinomial_log_prob(std::span<const int> counts, std::span<const double> alpha) {
  if (counts.size() != alpha.size() || counts.empty()) {
    throw DomainError("counts and alpha must be nonempty and of equal length");
  }
  double b = 0.0;
  long n = 0;
  double acc = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (!(alpha[k] > 0.0)) throw DomainError("alpha entries must be positive");
    if (counts[k] < 0) throw DomainError("counts must be non-negative");
    b += alpha[k];
    n += counts[k];
    acc += log_pochhammer(alpha[k], counts[k]);
  }
  return acc - log_pochhammer(b, n);
}

double evidence_nonatomic(const SizeBiasedPartition& partition, std::span<const double> base_log_values,
                          const PdParams& params) {
  if (static_cast<int>(base_log_values.size()) != partition.size()) {
    throw DomainError("need one base log-density per block");
  }
  return crd_log_prob(partition, params) +
         std::accumulate(base_log_values.begin(), base_log_values.end(), 0.0);
}

}  // namespace pdp
