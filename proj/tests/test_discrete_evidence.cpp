#include <doctest.h>

#include <cmath>
#include <vector>

#include "pdp/core.hpp"
#include "pdp/discrete_evidence.hpp"
#include "pdp/error.hpp"
#include "pdp/partition_laws.hpp"
#include "pdp/samplers.hpp"
#include "pdp/stats.hpp"

using namespace pdp;

TEST_CASE("discrete base") {
  const DiscreteBase base({3, 8}, {0.25, 0.75});
  CHECK(base.discrete());
  CHECK(*base.log_mass(8.0) == doctest::Approx(std::log(0.75)));
  CHECK(*base.log_mass(5.0) == -std::numeric_limits<double>::infinity());
  Rng rng(30, 0);
  stats::Accumulator is_three;
  for (int i = 0; i < 20000; ++i) is_three.add(base.draw(rng) == 3.0 ? 1.0 : 0.0);
  CHECK(is_three.z_score(0.25) < 4.0);
  CHECK_THROWS_AS(DiscreteBase(std::vector<double>{0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(DiscreteBase(std::vector<double>{1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(DiscreteBase({1, 1}, {0.5, 0.5}), DomainError);
}

TEST_CASE("evidence with multiplicities, two equal values") {
  const PdParams p(0.5, 1.0);
  const auto table = LogStirlingTable::build(0.5, 4);
  const std::vector<int> counts{2};
  const std::vector<double> base{std::log(0.2)};
  CHECK(std::exp(evidence_multiplicities(counts, MultiplicityVector({1}), base, p, table)) ==
        doctest::Approx(0.05).epsilon(1e-14));
  CHECK(std::exp(evidence_multiplicities(counts, MultiplicityVector({2}), base, p, table)) ==
        doctest::Approx(0.03).epsilon(1e-14));
  CHECK_THROWS_AS(evidence_multiplicities(counts, MultiplicityVector({3}), base, p, table), DomainError);
}

TEST_CASE("all-singleton multiplicities reduce to non-atomic evidence") {
  const PdParams p(0.3, 2.0);
  const auto table = LogStirlingTable::build(0.3, 4);
  const SizeBiasedPartition data({1, 2, 3});
  const std::vector<double> base{std::log(0.1), std::log(0.2), std::log(0.3)};
  CHECK(evidence_multiplicities(data.counts(), MultiplicityVector({1, 1, 1}), base, p, table) ==
        doctest::Approx(evidence_nonatomic(data, base, p)).epsilon(1e-14));
}

TEST_CASE("evidence with indicators") {
  const PdParams p(0.5, 1.0);
  const auto table = LogStirlingTable::build(0.5, 4);
  const SizeBiasedPartition data({1, 1});
  const std::vector<double> base{std::log(0.2)};
  const double e10 = std::exp(evidence_indicators(data, IndicatorVector({1, 0}), base, p, table));
  const double e01 = std::exp(evidence_indicators(data, IndicatorVector({0, 1}), base, p, table));
  CHECK(e10 == doctest::Approx(0.025).epsilon(1e-14));
  CHECK(e01 == doctest::Approx(0.025).epsilon(1e-14));
  CHECK(e10 + e01 == doctest::Approx(0.05).epsilon(1e-14));
  // t = n: binomial factor is 1.
  CHECK(evidence_indicators(data, IndicatorVector({1, 1}), base, p, table) ==
        doctest::Approx(evidence_multiplicities(data.counts(), MultiplicityVector({2}), base, p, table)));
}

TEST_CASE("consistency triangle over a two-symbol base") {
  const double theta[] = {0.4, 0.6};
  for (auto [a, b] : {std::pair{0.5, 1.0}, std::pair{0.0, 2.0}, std::pair{0.25, -0.2}}) {
    const PdParams p(a, b);
    const auto table = LogStirlingTable::build(a, 4);
    for (int n = 1; n <= 4; ++n) {
      double total_over_data = 0.0;
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> seq;
        for (int i = 0; i < n; ++i) seq.push_back((mask >> i) & 1);
        const auto data = canonicalize(std::span<const int>(seq));
        std::vector<double> base;
        for (const auto& block : data.blocks()) base.push_back(std::log(theta[seq[static_cast<std::size_t>(block[0] - 1)]]));

        double latent = 0.0;
        for_each_partition(n, [&](const SizeBiasedPartition& tables) {
          double w = std::exp(crd_log_prob(tables, p));
          for (const auto& block : tables.blocks()) {
            const int v = seq[static_cast<std::size_t>(block[0] - 1)];
            for (int item : block) {
              if (seq[static_cast<std::size_t>(item - 1)] != v) return;
            }
            w *= theta[v];
          }
          latent += w;
        });

        double by_mult = 0.0;
        const auto& counts = data.counts();
        std::vector<int> t(counts.size(), 1);
        for (bool more = true; more;) {
          by_mult += std::exp(evidence_multiplicities(counts, MultiplicityVector(t), base, p, table));
          std::size_t m = 0;
          while (m < t.size() && t[m] == counts[m]) t[m++] = 1;
          more = m < t.size();
          if (more) ++t[m];
        }

        double by_ind = 0.0;
        for (int r = 0; r < (1 << n); ++r) {
          std::vector<std::uint8_t> ind;
          std::vector<int> hit(counts.size(), 0);
          for (int i = 0; i < n; ++i) {
            ind.push_back(static_cast<std::uint8_t>((r >> i) & 1));
            hit[static_cast<std::size_t>(data.assignments()[static_cast<std::size_t>(i)] - 1)] += (r >> i) & 1;
          }
          if (std::find(hit.begin(), hit.end(), 0) != hit.end()) continue;
          by_ind += std::exp(evidence_indicators(data, IndicatorVector(ind), base, p, table));
        }
        CHECK(by_mult == doctest::Approx(latent).epsilon(1e-10));
        CHECK(by_ind == doctest::Approx(latent).epsilon(1e-10));
        total_over_data += latent;
      }
      // The marginal over all data sequences is a probability distribution.
      CHECK(total_over_data == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("multiplicity conditional") {
  const PdParams p(0.5, 1.0);
  const auto ratios = StirlingRatioTable::build(0.5, 20);
  const auto table = LogStirlingTable::build(0.5, 20);
  const double theta = 0.3;
  for (long t_rest : {0L, 3L}) {
    const auto cond = multiplicity_conditional(5, theta, t_rest, p, ratios);
    // Reference: (b|a)_{T} theta^t S^5_t, normalized.
    std::vector<double> ref;
    double z = 0.0;
    for (int t = 1; t <= 5; ++t) {
      const double w = std::exp(log_pochhammer_inc(p.b(), p.a(), t_rest + t) + t * std::log(theta) + table.log_s(5, t));
      ref.push_back(w);
      z += w;
    }
    for (int t = 0; t < 5; ++t) CHECK(cond[static_cast<std::size_t>(t)] == doctest::Approx(ref[static_cast<std::size_t>(t)] / z).epsilon(1e-12));
  }
  const auto tiny = multiplicity_conditional(8, 1e-9, 0, p, ratios);
  CHECK(tiny[0] > 1.0 - 1e-6);
  CHECK_THROWS_AS(multiplicity_conditional(21, 0.3, 0, p, ratios), CoverageError);
}

TEST_CASE("Gibbs step edge cases") {
  const PdParams p(0.5, 1.0);
  const auto ratios = StirlingRatioTable::build(0.5, 10, {.t_max = 3});
  Rng rng(31, 0);
  for (auto mode : {GibbsMode::full_scan, GibbsMode::indicator_step}) {
    CHECK(gibbs_resample_multiplicity(1, 1, 0.3, 0, p, ratios, rng, mode) == 1);
    CHECK_THROWS_AS(gibbs_resample_multiplicity(3, 4, 0.3, 0, p, ratios, rng, mode), DomainError);
  }
  try {
    gibbs_resample_multiplicity(6, 1, 0.3, 0, p, ratios, rng, GibbsMode::full_scan);
    FAIL("expected a coverage error");
  } catch (const CoverageError& e) {
    CHECK(e.n() == 6);
    CHECK(e.t() == 6);
  }
  // Indicator step needs V^6_{t'+1}; t' + 1 = 4 exceeds t_max = 3.
  bool raised = false;
  for (int i = 0; i < 50 && !raised; ++i) {
    try {
      gibbs_resample_multiplicity(6, 4, 0.3, 0, p, ratios, rng, GibbsMode::indicator_step);
    } catch (const CoverageError& e) {
      raised = true;
      CHECK(e.n() == 6);
      CHECK(e.t() >= 4);
    }
  }
  CHECK(raised);
}

TEST_CASE("both Gibbs modes target the same law") {
  const PdParams p(0.5, 1.0);
  const int n = 5;
  const double theta = 0.3;
  const auto ratios = StirlingRatioTable::build(0.5, n);
  const auto exact = multiplicity_conditional(n, theta, 2, p, ratios);
  Rng rng(32, 0);
  for (auto mode : {GibbsMode::full_scan, GibbsMode::indicator_step}) {
    std::vector<double> freq(n, 0.0);
    int t = 1;
    for (int s = 0; s < 200000; ++s) {
      t = gibbs_resample_multiplicity(n, t, theta, 2, p, ratios, rng, mode);
      freq[static_cast<std::size_t>(t - 1)] += 1.0 / 200000;
    }
    CHECK(stats::total_variation(freq, exact) < 0.01);
  }
}

TEST_CASE("discrete moments") {
  const double half[] = {0.5, 0.5};
  const auto m = pdp_moments(half, PdParams(0.0, 1.0));
  CHECK(m.variance(0) == doctest::Approx(0.125));
  CHECK(m.covariance(0, 1) == doctest::Approx(-0.125));
  CHECK(m.third(0, 0, 0) == 0.0);
  CHECK(m.mean(1) == 0.5);

  const double th[] = {0.2, 0.3, 0.5};
  const auto near_one = pdp_moments(th, PdParams(1.0 - 1e-12, 1.0));
  CHECK(std::abs(near_one.variance(0)) < 1e-12);
  CHECK(std::abs(near_one.third(0, 1, 2)) < 1e-12);

  // Case values of the third central moment, checked against the
  // expectation over X ~ theta computed by brute force.
  const auto mm = pdp_moments(th, PdParams(0.3, 1.5));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        double ex = 0.0;
        for (std::size_t x = 0; x < 3; ++x) {
          ex += th[x] * ((x == i) - th[i]) * ((x == j) - th[j]) * ((x == k) - th[k]);
        }
        CHECK(mm.third(i, j, k) == doctest::Approx(mm.c3 * ex).epsilon(1e-13));
      }
    }
  }
  CHECK_THROWS_AS(pdp_moments(std::vector<double>{0.5, 0.6}, PdParams(0.3, 1.0)), DomainError);
}

TEST_CASE("Dirichlet-equivalent concentration") {
  CHECK(dirichlet_equivalent_concentration(PdParams(0.0, 3.0)) == 3.0);
  CHECK(dirichlet_equivalent_concentration(PdParams(0.5, 1.0)) == doctest::Approx(3.0));
  const double th[] = {0.1, 0.9};
  for (double a : {0.0, 0.2, 0.7}) {
    for (double b : {0.5, 4.0}) {
      const PdParams p(a, b);
      const auto d = dirichlet_moments(th, dirichlet_equivalent_concentration(p));
      CHECK(d.variance(0) == doctest::Approx(pdp_moments(th, p).variance(0)).epsilon(1e-14));
    }
  }
  // At a = 0 the whole moment set coincides.
  const auto dp = pdp_moments(th, PdParams(0.0, 2.0));
  const auto dir = dirichlet_moments(th, 2.0);
  CHECK(dp.c3 == doctest::Approx(dir.c3).epsilon(1e-15));
}

TEST_CASE("third-moment gap to the Dirichlet approximation is linear in a") {
  // c3_pdp / c3_dir = (2 - a)(b + 2 - a) / (2 (1 - a)(b + 2)) = 1 + a b / (2 (b + 2)) + O(a^2).
  const double th[] = {0.3, 0.7};
  const double b = 1.0;
  for (double a : {0.01, 0.02, 0.05, 0.1}) {
    const PdParams p(a, b);
    const double ratio = pdp_moments(th, p).c3 / dirichlet_moments(th, dirichlet_equivalent_concentration(p)).c3;
    const double slope = (ratio - 1.0) / a;
    CHECK(slope == doctest::Approx(b / (2.0 * (b + 2.0))).epsilon(0.1));
  }
}

TEST_CASE("quadratic moment-approximation claim" * doctest::should_fail()) {
  // Fit C in |third-moment gap| <= C a^2 across small a: C would have to
  // grow like 1/a, so a single constant does not exist.
  const double th[] = {0.3, 0.7};
  const double b = 1.0;
  double c_small = 0.0;
  double c_large = 0.0;
  for (double a : {0.01, 0.1}) {
    const PdParams p(a, b);
    const double gap =
        std::abs(pdp_moments(th, p).third(0, 0, 0) -
                 dirichlet_moments(th, dirichlet_equivalent_concentration(p)).third(0, 0, 0));
    (a == 0.01 ? c_small : c_large) = gap / (a * a);
  }
  CHECK(c_small / c_large == doctest::Approx(1.0).epsilon(0.5));
}

TEST_CASE("power-sum expectations") {
  CHECK(power_sum_expectation(PdParams(0.5, 1.0), 2) == doctest::Approx(0.25));
  CHECK(power_sum_expectation(PdParams(0.0, 1.0), 3) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(power_sum_expectation(PdParams(0.0, 1.0), 6), DomainError);
  Rng rng(33, 0);
  const PdParams p(0.3, 2.0);
  std::vector<stats::Accumulator> acc(4);
  for (int r = 0; r < 20000; ++r) {
    const auto w = sample_gem(p, rng, {1e-12, 2000});
    double s[4] = {};
    for (double x : w.weights()) {
      for (int k = 0; k < 4; ++k) s[k] += std::pow(x, k + 2);
    }
    for (int k = 0; k < 4; ++k) acc[static_cast<std::size_t>(k)].add(s[k]);
  }
  for (int k = 0; k < 4; ++k) CHECK(acc[static_cast<std::size_t>(k)].z_score(power_sum_expectation(p, k + 2)) < 4.0);
}

TEST_CASE("moments against Monte Carlo over GEM weights") {
  const PdParams p(0.5, 1.0);
  const double th[] = {0.3, 0.7};
  const auto m = pdp_moments(th, p);
  Rng rng(34, 0);
  stats::Accumulator mean;
  stats::Accumulator var;
  for (int r = 0; r < 20000; ++r) {
    const auto w = sample_gem(p, rng, {1e-12, 500});
    double p0 = w.residual() * th[0];
    for (double x : w.weights()) {
      if (rng.uniform() < th[0]) p0 += x;
    }
    mean.add(p0);
    var.add((p0 - th[0]) * (p0 - th[0]));
  }
  CHECK(mean.z_score(m.mean(0)) < 4.0);
  CHECK(var.z_score(m.variance(0)) < 4.0);
}
