#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "pdp/core.hpp"
#include "pdp/error.hpp"
#include "pdp/partition_laws.hpp"
#include "pdp/stirling.hpp"

using namespace pdp;

TEST_CASE("CRD law on three items") {
  CHECK(std::exp(crd_log_prob(SizeBiasedPartition({1, 2, 2}), PdParams(0.0, 1.0))) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(std::exp(crd_log_prob(SizeBiasedPartition({1, 1, 1}), PdParams(0.5, 1.0))) ==
        doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("CRD law sums to one over all partitions") {
  for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{0.5, 1.0}, std::pair{0.5, -0.25}, std::pair{0.8, -0.2},
                      std::pair{0.3, 7.0}}) {
    const PdParams p(a, b);
    for (int n = 1; n <= 6; ++n) {
      double s = 0.0;
      for_each_partition(n, [&](const SizeBiasedPartition& part) { s += std::exp(crd_log_prob(part, p)); });
      CHECK(std::abs(s - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("cancelled normalizer agrees with the signed Pochhammer ratio") {
  // (b|a)_M / (b)_N with negative b, through signed products.
  for (auto [a, b] : {std::pair{0.5, -0.25}, std::pair{0.8, -0.6}, std::pair{0.3, 2.0}}) {
    const PdParams p(a, b);
    for (long n = 1; n <= 10; ++n) {
      for (long m = 1; m <= n; ++m) {
        const auto num = signed_log_pochhammer_inc(b, a, m);
        const auto den = signed_log_pochhammer_inc(b, 1.0, n);
        CHECK(num.sign * den.sign == 1);
        CHECK(log_crd_normalizer(m, n, p) == doctest::Approx(num.log_abs - den.log_abs).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("partition-size pmf examples") {
  const auto t = LogStirlingTable::build(0.5, 3);
  const auto pmf = partition_size_pmf(3, PdParams(0.5, 1.0), t);
  CHECK(pmf[0] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(pmf[1] == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(pmf[2] == doctest::Approx(0.5).epsilon(1e-12));

  const auto t0 = LogStirlingTable::build(0.0, 3);
  const auto pmf0 = partition_size_pmf(3, PdParams(0.0, 1.0), t0);
  CHECK(pmf0[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(pmf0[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pmf0[2] == doctest::Approx(1.0 / 6).epsilon(1e-12));

  CHECK(partition_size_pmf(1, PdParams(0.5, 1.0), t) == std::vector<double>{1.0});
  CHECK_THROWS_AS(partition_size_pmf(4, PdParams(0.5, 1.0), t), CoverageError);
  CHECK_THROWS_AS(partition_size_pmf(3, PdParams(0.4, 1.0), t), DomainError);
}

TEST_CASE("aggregation of partitions gives the pmf") {
  const PdParams p(0.4, 0.6);
  const auto t = LogStirlingTable::build(0.4, 8);
  for (int n = 1; n <= 8; ++n) {
    std::vector<double> agg(static_cast<std::size_t>(n), 0.0);
    for_each_partition(n, [&](const SizeBiasedPartition& part) {
      agg[static_cast<std::size_t>(part.size() - 1)] += std::exp(crd_log_prob(part, p));
    });
    const auto pmf = partition_size_pmf(n, p, t);
    for (int m = 0; m < n; ++m) CHECK(pmf[static_cast<std::size_t>(m)] == doctest::Approx(agg[static_cast<std::size_t>(m)]).epsilon(1e-9));
  }
}

TEST_CASE("expected and variance of M") {
  CHECK(expected_M(PdParams(0.5, 1.0), 3) == doctest::Approx(2.375).epsilon(1e-12));
  CHECK(expected_M(PdParams(0.0, 1.0), 3) == doctest::Approx(11.0 / 6.0).epsilon(1e-12));
  CHECK(var_M(PdParams(0.0, 1.0), 3) == doctest::Approx(17.0 / 36.0).epsilon(1e-12));
  for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{0.5, 1.0}, std::pair{0.5, -0.3}, std::pair{0.7, 0.0}}) {
    CHECK(expected_M(PdParams(a, b), 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(var_M(PdParams(a, b), 1) == 0.0);
  }
  // Variance by hand at N = 2, a = 0.5, b = 1: p(M=2) = 0.75.
  CHECK(var_M(PdParams(0.5, 1.0), 2) == doctest::Approx(0.1875).epsilon(1e-12));
}

TEST_CASE("moments match the pmf, including b <= 0") {
  for (auto [a, b] : {std::pair{0.5, -0.3}, std::pair{0.6, 0.0}, std::pair{0.2, 3.0}, std::pair{0.0, 0.4}}) {
    const PdParams p(a, b);
    const auto t = LogStirlingTable::build(a, 150, {.t_max = 150});
    for (long n : {2L, 10L, 150L}) {
      const auto pmf = partition_size_pmf(n, p, t);
      double e = 0.0;
      double e2 = 0.0;
      for (std::size_t m = 0; m < pmf.size(); ++m) {
        e += static_cast<double>(m + 1) * pmf[m];
        e2 += static_cast<double>((m + 1) * (m + 1)) * pmf[m];
      }
      CHECK(expected_M(p, n) == doctest::Approx(e).epsilon(1e-9));
      CHECK(var_M(p, n) == doctest::Approx(e2 - e * e).epsilon(1e-7));
    }
  }
}

TEST_CASE("large N stays finite") {
  const PdParams p(0.5, 10.0);
  const double e = expected_M(p, 100'000'000);
  CHECK(std::isfinite(e));
  // b = 10 is only moderately large, so the approximation carries about 1%.
  CHECK(e == doctest::Approx(approx_expected_M(p, 100'000'000)).epsilon(0.02));
  CHECK(std::isfinite(var_M(p, 100'000'000)));
}

TEST_CASE("approximations") {
  for (double a : {0.0, 0.5}) {
    const PdParams p(a, 50.0);
    CHECK(std::abs(approx_expected_M(p, 10000) / expected_M(p, 10000) - 1.0) < 0.02);
  }
  CHECK(approx_expected_M(PdParams(0.0, 50.0), 10000) == doctest::Approx(50.0 * std::log1p(200.0)));
  CHECK_THROWS_AS(approx_expected_M(PdParams(0.5, -0.2), 10), DomainError);
  CHECK(std::isfinite(approx_var_M(PdParams(0.9, 0.1), 10)));
}

TEST_CASE("series bounds and the oracle") {
  CHECK(expected_M_oracle(std::vector<double>{1.0}, 50) == 1.0);
  const std::vector<double> uniform(20, 0.05);
  CHECK(expected_M_oracle(uniform, 100000) == doctest::Approx(20.0).epsilon(1e-12));

  CHECK(geometric_bound(0.5, 1024) == doctest::Approx(12.914).epsilon(1e-4));
  CHECK(dirichlet_series_bound(2.0, 100) == doctest::Approx(1.5 + 2.0 * std::sqrt(100.0 / (std::numbers::pi * std::numbers::pi / 6))).epsilon(1e-12));
  CHECK(dirichlet_series_bound(2.0, 100) == doctest::Approx(17.09).epsilon(1e-3));

  // Geometric r = 0.5 truncated at tail mass below 1e-12.
  std::vector<double> q;
  for (double tail = 1.0; tail > 1e-13; tail *= 0.5) q.push_back(tail * 0.5);
  const double oracle = expected_M_oracle(q, 1024);
  CHECK(oracle <= geometric_bound(0.5, 1024));
  const auto series = series_expected_M(SeriesKind::geometric, 0.5, 1024);
  CHECK(series.value == doctest::Approx(oracle).epsilon(1e-8));
  CHECK(series.value - series.tail_allowance <= oracle + 1e-12);

  for (double s : {1.5, 2.0, 3.0}) {
    for (long n : {100L, 10000L}) {
      CHECK(series_expected_M(SeriesKind::dirichlet, s, n).value <= dirichlet_series_bound(s, n));
    }
  }
  CHECK_THROWS_AS(geometric_bound(1.0, 10), DomainError);
  CHECK_THROWS_AS(dirichlet_series_bound(1.0, 10), DomainError);
}

TEST_CASE("Dirichlet-multinomial") {
  CHECK(dirichlet_multinomial_log_prob(std::vector<int>{1, 1}, std::vector<double>{1.0, 1.0}) ==
        doctest::Approx(std::log(1.0 / 6.0)));
  CHECK(dirichlet_multinomial_log_prob(std::vector<int>{7}, std::vector<double>{2.5}) == doctest::Approx(0.0));
  double total = 0.0;
  for (int k = 0; k <= 3; ++k) {
    const double coef = k == 0 || k == 3 ? 1.0 : 3.0;
    total += coef * std::exp(dirichlet_multinomial_log_prob(std::vector<int>{k, 3 - k}, std::vector<double>{1.0, 1.0}));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("non-atomic evidence") {
  const PdParams p(0.5, 1.0);
  const SizeBiasedPartition one({1, 1});
  const double h = std::log(0.2);
  CHECK(evidence_nonatomic(one, std::vector<double>{h}, p) == doctest::Approx(std::log(0.5 / 2.0) + h));
  const SizeBiasedPartition two({1, 2});
  CHECK(std::exp(evidence_nonatomic(two, std::vector<double>{std::log(0.2), std::log(0.3)}, p)) ==
        doctest::Approx(0.045).epsilon(1e-14));
  CHECK(evidence_nonatomic(two, std::vector<double>{0.0, 0.0}, p) == crd_log_prob(two, p));
  CHECK_THROWS_AS(evidence_nonatomic(two, std::vector<double>{0.0}, p), DomainError);
}
