#include "pdp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "pdp/core.hpp"
#include "pdp/discrete_evidence.hpp"
#include "pdp/error.hpp"
#include "pdp/frag_coag.hpp"
#include "pdp/partition_laws.hpp"
#include "pdp/rng.hpp"
#include "pdp/samplers.hpp"
#include "pdp/special_functions.hpp"
#include "pdp/stats.hpp"
#include "pdp/stirling.hpp"

namespace pdp::verify {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

double rel_err(double x, double ref, double floor = 0.0) {
  return std::abs(x - ref) / std::max(std::abs(ref), floor);
}

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

// Tracks the worst value of some error statistic.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string& at) {
    if (!(v <= value)) {
      value = v;
      where = at;
    }
  }
};

std::string at(double a, double b, long n) {
  std::ostringstream s;
  s << "(a=" << a << ",b=" << b << ",N=" << n << ")";
  return s.str();
}

const double kGridA[] = {0.0, 0.5, 0.9};
const double kGridB[] = {0.5, 1.0, 10.0};

// 1. partition-size law at N=3 and normalization for N <= 200.
Outcome exact_pmf(std::uint64_t) {
  const PdParams p(0.5, 1.0);
  const auto table3 = LogStirlingTable::build(0.5, 3);
  const auto pmf = partition_size_pmf(3, p, table3);
  const double want[] = {0.125, 0.375, 0.5};
  double worst_spot = 0.0;
  for (int i = 0; i < 3; ++i) worst_spot = std::max(worst_spot, rel_err(pmf[static_cast<std::size_t>(i)], want[i]));

  Worst sum_dev;
  for (double a : kGridA) {
    const auto table = LogStirlingTable::build(a, 200, {.t_max = 200});
    for (double b : kGridB) {
      const PdParams q(a, b);
      for (long n = 1; n <= 200; ++n) {
        const auto row = partition_size_pmf(n, q, table);
        double s = 0.0;
        for (double v : row) s += v;
        sum_dev.update(std::abs(s - 1.0), at(a, b, n));
      }
    }
  }
  const bool ok = worst_spot <= 1e-12 && sum_dev.value <= 1e-9;
  return {ok, "N=3 rel err " + fmt("%.2e", worst_spot) + "; max |sum-1| " + fmt("%.2e", sum_dev.value) + " at " +
                  sum_dev.where};
}

// 2. pmf equals aggregated enumeration of partitions.
Outcome aggregation(std::uint64_t) {
  const double extra_b[] = {-0.3};
  Worst worst;
  auto check = [&](double a, double b) {
    const PdParams p(a, b);
    const auto table = LogStirlingTable::build(a, 8);
    for (int n = 1; n <= 8; ++n) {
      std::vector<double> agg(static_cast<std::size_t>(n), 0.0);
      for_each_partition(n, [&](const SizeBiasedPartition& part) {
        agg[static_cast<std::size_t>(part.size() - 1)] += std::exp(crd_log_prob(part, p));
      });
      const auto pmf = partition_size_pmf(n, p, table);
      for (int m = 0; m < n; ++m) {
        worst.update(rel_err(pmf[static_cast<std::size_t>(m)], agg[static_cast<std::size_t>(m)]), at(a, b, n));
      }
    }
  };
  for (double a : kGridA) {
    for (double b : kGridB) check(a, b);
  }
  for (double b : extra_b) check(0.5, b);
  return {worst.value <= 1e-9, "max rel err " + fmt("%.2e", worst.value) + " at " + worst.where};
}

// 3. closed-form E[M], Var[M] against pmf moments.
Outcome closed_moments(std::uint64_t) {
  Worst we;
  Worst wv;
  for (double a : kGridA) {
    const auto table = LogStirlingTable::build(a, 200, {.t_max = 200});
    for (double b : kGridB) {
      const PdParams p(a, b);
      for (long n = 1; n <= 200; ++n) {
        const auto pmf = partition_size_pmf(n, p, table);
        double e = 0.0;
        for (std::size_t m = 0; m < pmf.size(); ++m) e += static_cast<double>(m + 1) * pmf[m];
        double v = 0.0;
        for (std::size_t m = 0; m < pmf.size(); ++m) {
          const double d = static_cast<double>(m + 1) - e;
          v += d * d * pmf[m];
        }
        we.update(rel_err(expected_M(p, n), e), at(a, b, n));
        // Var = 0 at N = 1; compare absolutely there.
        wv.update(rel_err(var_M(p, n), v, 1e-6), at(a, b, n));
      }
    }
  }
  const double s1 = rel_err(expected_M(PdParams(0.0, 1.0), 3), 11.0 / 6.0);
  const double s2 = rel_err(var_M(PdParams(0.0, 1.0), 3), 17.0 / 36.0);
  const double s3 = rel_err(expected_M(PdParams(0.5, 1.0), 3), 2.375);
  const double spot = std::max({s1, s2, s3});
  const bool ok = we.value <= 1e-8 && wv.value <= 1e-8 && spot <= 1e-12;
  return {ok, "E rel " + fmt("%.2e", we.value) + " at " + we.where + "; Var rel " + fmt("%.2e", wv.value) + " at " +
                  wv.where + "; spot " + fmt("%.2e", spot)};
}

// 4. Stirling numbers by independent methods.
Outcome stirling_cross(std::uint64_t seed) {
  Worst explicit_err;
  for (double a : {0.1, 0.5, 0.9}) {
    const auto table = LogStirlingTable::build(a, 50);
    for (long n = 1; n <= 50; ++n) {
      for (long m = 1; m <= std::min(4L, n); ++m) {
        explicit_err.update(rel_err(std::exp(log_stirling_explicit(n, m, a) - table.log_s(n, m)), 1.0),
                            at(a, m, n));
      }
    }
  }

  Worst ratio_err;
  {
    const double a = 0.5;
    const auto logs = LogStirlingTable::build(a, 2000);
    const auto ratios = StirlingRatioTable::build(a, 2000);
    for (long n = 2; n <= 2000; ++n) {
      for (long t = 2; t <= std::min(n, ratios.t_max()); ++t) {
        const double from_log = std::exp(logs.log_s(n, t) - logs.log_s(n, t - 1));
        const double e = rel_err(ratios.v(n, t), from_log);
        if (!(e <= ratio_err.value)) ratio_err.update(e, at(a, static_cast<double>(t), n));
      }
    }
  }

  Worst mult_err;
  Rng rng(seed, 4);
  for (int i = 0; i < 10; ++i) {
    const double a = 0.05 + 0.9 * rng.uniform();
    const long n = 10 + static_cast<long>(rng.below(91));
    const long m = 2 + static_cast<long>(rng.below(static_cast<std::uint64_t>(std::min(n, 30L) - 1)));
    const long k = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(m - 1)));
    const auto table = LogStirlingTable::build(a, n);
    const double lhs = mult_recursion_check(n, m, a, k, table);
    mult_err.update(rel_err(std::exp(lhs - table.log_s(n, m)), 1.0), at(a, static_cast<double>(m), n));
  }

  // Unsigned Stirling numbers of the first kind, exact integer recursion.
  double int_err = 0.0;
  {
    std::vector<std::vector<unsigned long long>> c(13, std::vector<unsigned long long>(13, 0));
    c[0][0] = 1;
    for (int n = 0; n < 12; ++n) {
      for (int k = 1; k <= n + 1; ++k) c[n + 1][k] = c[n][k - 1] + static_cast<unsigned long long>(n) * c[n][k];
    }
    const auto table = LogStirlingTable::build(0.0, 12);
    for (int n = 1; n <= 12; ++n) {
      for (int k = 1; k <= n; ++k) {
        const double exact = static_cast<double>(c[n][k]);
        int_err = std::max(int_err, rel_err(std::exp(table.log_s(n, k)), exact));
      }
    }
  }

  const bool ok = explicit_err.value <= 1e-9 && ratio_err.value <= 1e-6 && mult_err.value <= 1e-10 &&
                  int_err <= 1e-12;
  return {ok, "explicit " + fmt("%.2e", explicit_err.value) + "; ratio " + fmt("%.2e", ratio_err.value) + " at " +
                  ratio_err.where + "; multiplicative " + fmt("%.2e", mult_err.value) + "; a=0 integers " +
                  fmt("%.2e", int_err)};
}

// 5. ratio table at N = 10^4, a = 0.5.
Outcome table3(std::uint64_t) {
  const auto ratios = StirlingRatioTable::build(0.5, 10000);
  const long ts[] = {10, 100, 1000};
  const double want[] = {0.222133, 0.0201025, 0.00189684};
  double worst = 0.0;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const double v = ratios.v(10000, ts[i]);
    worst = std::max(worst, rel_err(v, want[i]));
    detail += "V(" + std::to_string(ts[i]) + ")=" + fmt("%.9g", v) + " ";
  }
  return {worst <= 5e-5, detail + "max rel " + fmt("%.2e", worst)};
}

// 6. asymptotic Stirling number.
Outcome asymptotic(std::uint64_t) {
  const long n = 10000;
  const long m = 2;
  const double a = 0.5;
  const auto table = LogStirlingTable::build(a, n, {.t_max = m});
  const auto approx = stirling_asymptotic(n, m, a);
  const double err = std::abs(std::expm1(approx.log_value - table.log_s(n, m)));
  return {err <= 0.03, "rel err " + fmt("%.2e", err) + ", scale M/N^a " + fmt("%.3f", approx.error_scale)};
}

// Table of the five partitions of three items, closed form per block pattern.
std::vector<double> three_item_law(double a, double b) {
  const double d = (b + 1.0) * (b + 2.0);
  if (a == 0.0) return {2.0 / d, b / d, b / d, b / d, b * b / d};
  const double two = (b + a) * (1.0 - a) / d;
  return {(1.0 - a) * (2.0 - a) / d, two, two, two, (b + a) * (b + 2.0 * a) / d};
}

// 7. CRP draws at N = 3.
Outcome crp_exact(std::uint64_t seed) {
  const auto parts = enumerate_partitions(3);  // (111), (112), (121), (122), (123)
  std::string detail;
  bool ok = true;
  for (double a : {0.0, 0.5}) {
    const PdParams p(a, 1.0);
    const auto law = three_item_law(a, 1.0);
    double law_err = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      law_err = std::max(law_err, rel_err(std::exp(crd_log_prob(parts[i], p)), law[i]));
    }
    Rng rng(seed, a == 0.0 ? 70 : 71);
    std::vector<long> counts(parts.size(), 0);
    for (int r = 0; r < 200000; ++r) {
      const auto s = sample_crp(p, 3, rng);
      const auto it = std::find(parts.begin(), parts.end(), s);
      ++counts[static_cast<std::size_t>(it - parts.begin())];
    }
    const auto chi = stats::chi_square(counts, law);
    ok = ok && chi.p_value > 0.001 && law_err <= 1e-12;
    detail += "a=" + fmt("%g", a) + ": p=" + fmt("%.4f", chi.p_value) + " law err " + fmt("%.1e", law_err) + "; ";
  }
  return {ok, detail};
}

std::map<SizeBiasedPartition, std::size_t> partition_index(int n) {
  std::map<SizeBiasedPartition, std::size_t> out;
  for (const auto& p : enumerate_partitions(n)) out.emplace(p, out.size());
  return out;
}

std::vector<double> exact_law(const PdParams& p, const std::map<SizeBiasedPartition, std::size_t>& index) {
  std::vector<double> law(index.size());
  for (const auto& [part, i] : index) law[i] = std::exp(crd_log_prob(part, p));
  return law;
}

// 8. fragmentation and coagulation samplers at N = 4.
Outcome frag_coag_theorems(std::uint64_t seed) {
  const auto index = partition_index(4);
  const double cases[][3] = {{0.5, 0.5, 1.0}, {0.8, 0.25, 0.5}};
  constexpr int kDraws = 200000;
  bool ok = true;
  std::string detail;
  int stream = 80;
  for (const auto& c : cases) {
    const double a1 = c[0];
    const double a2 = c[1];
    const double b = c[2];
    const auto frag_target = exact_law(PdParams(a1, b), index);
    const auto coag_target = exact_law(PdParams(a1 * a2, b), index);
    Rng rf(seed, static_cast<std::uint64_t>(stream++));
    Rng rc(seed, static_cast<std::uint64_t>(stream++));
    std::vector<long> frag(index.size(), 0);
    std::vector<long> coag(index.size(), 0);
    for (int r = 0; r < kDraws; ++r) {
      ++frag[index.at(sample_fragmented_crd(4, a1, a2, b, rf))];
      ++coag[index.at(sample_coagulated_crd(4, a1, a2, b, rc))];
    }
    const double lf = stats::l1_distance(frag, frag_target);
    const double lc = stats::l1_distance(coag, coag_target);
    const double pf = stats::chi_square(frag, frag_target).p_value;
    const double pc = stats::chi_square(coag, coag_target).p_value;
    ok = ok && lf < 0.01 && lc < 0.01;
    std::ostringstream s;
    s << "(" << a1 << "," << a2 << "," << b << "): frag L1 " << fmt("%.4f", lf) << " p " << fmt("%.3f", pf)
      << ", coag L1 " << fmt("%.4f", lc) << " p " << fmt("%.3f", pc) << "; ";
    detail += s.str();
  }
  return {ok, detail};
}

// 9. tree marginals.
Outcome tree_marginals(std::uint64_t seed) {
  const auto index = partition_index(4);
  const auto target = exact_law(PdParams(0.6, 1.0), index);
  const double schedule[] = {0.3, 0.6};
  Rng rng(seed, 90);
  std::vector<long> counts(index.size(), 0);
  for (int r = 0; r < 200000; ++r) {
    const auto tree = sample_tree(4, schedule, 1.0, 2, rng);
    ++counts[index.at(to_size_biased(tree.level(2)))];
  }
  const double l1 = stats::l1_distance(counts, target);

  const double root_schedule[] = {0.0};
  const double b = 50.0;
  const int n = 10000;
  Rng rng2(seed, 91);
  stats::Accumulator fan_out;
  for (int r = 0; r < 10000; ++r) {
    const auto tree = sample_tree(n, root_schedule, b, 1, rng2);
    fan_out.add(static_cast<double>(tree.children(0).size()));
  }
  const double approx = b * std::log1p(n / b);
  const double err = rel_err(fan_out.mean(), approx);
  const bool ok = l1 < 0.01 && err <= 0.02;
  return {ok, "depth-2 L1 " + fmt("%.4f", l1) + "; fan-out mean " + fmt("%.2f", fan_out.mean()) + " vs " +
                  fmt("%.2f", approx) + " rel " + fmt("%.4f", err)};
}

// 10. discrete evidence: three routes to the marginal of a data sequence.
Outcome consistency_triangle(std::uint64_t) {
  const double theta[] = {0.3, 0.7};
  const double param_grid[][2] = {{0.5, 1.0}, {0.0, 1.0}, {0.3, -0.2}, {0.8, 5.0}};
  Worst worst;
  for (const auto& pg : param_grid) {
    const PdParams p(pg[0], pg[1]);
    const auto table = LogStirlingTable::build(pg[0], 4);
    for (int n = 1; n <= 4; ++n) {
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> seq(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) seq[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        const auto data = canonicalize(std::span<const int>(seq));
        std::vector<double> base_log;
        for (const auto& block : data.blocks()) {
          base_log.push_back(std::log(theta[seq[static_cast<std::size_t>(block.front() - 1)]]));
        }

        // (i) latent tables: partitions whose blocks carry one value each.
        double latent = 0.0;
        for_each_partition(n, [&](const SizeBiasedPartition& tables) {
          double w = std::exp(crd_log_prob(tables, p));
          for (const auto& block : tables.blocks()) {
            const int v = seq[static_cast<std::size_t>(block.front() - 1)];
            for (int item : block) {
              if (seq[static_cast<std::size_t>(item - 1)] != v) return;
            }
            w *= theta[v];
          }
          latent += w;
        });

        // (ii) all multiplicity vectors.
        const auto& counts = data.counts();
        double by_mult = 0.0;
        std::vector<int> t(counts.size(), 1);
        while (true) {
          by_mult += std::exp(evidence_multiplicities(counts, MultiplicityVector(t), base_log, p, table));
          std::size_t m = 0;
          while (m < t.size() && t[m] == counts[m]) t[m++] = 1;
          if (m == t.size()) break;
          ++t[m];
        }

        // (iii) all valid indicator configurations.
        double by_ind = 0.0;
        for (int r = 0; r < (1 << n); ++r) {
          std::vector<std::uint8_t> ind(static_cast<std::size_t>(n));
          std::vector<int> seen(counts.size(), 0);
          for (int i = 0; i < n; ++i) {
            ind[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((r >> i) & 1);
            seen[static_cast<std::size_t>(data.assignments()[static_cast<std::size_t>(i)] - 1)] += (r >> i) & 1;
          }
          if (std::find(seen.begin(), seen.end(), 0) != seen.end()) continue;
          by_ind += std::exp(evidence_indicators(data, IndicatorVector(ind), base_log, p, table));
        }
        const std::string where = at(pg[0], pg[1], n) + " mask " + std::to_string(mask);
        worst.update(rel_err(by_mult, latent), where);
        worst.update(rel_err(by_ind, latent), where);
      }
    }
  }
  return {worst.value <= 1e-10, "max rel err " + fmt("%.2e", worst.value) + " at " + worst.where};
}

// 11. indicator-step chain against the exact conditional.
Outcome gibbs_stationarity(std::uint64_t seed) {
  const PdParams p(0.5, 1.0);
  const int n = 5;
  const double theta = 0.3;
  const auto ratios = StirlingRatioTable::build(0.5, n);
  const auto exact = multiplicity_conditional(n, theta, 0, p, ratios);
  Rng rng(seed, 110);
  std::vector<double> freq(static_cast<std::size_t>(n), 0.0);
  int t = 1;
  constexpr int kSteps = 100000;
  for (int s = 0; s < kSteps; ++s) {
    t = gibbs_resample_multiplicity(n, t, theta, 0, p, ratios, rng, GibbsMode::indicator_step);
    freq[static_cast<std::size_t>(t - 1)] += 1.0 / kSteps;
  }
  const double tv = stats::total_variation(freq, exact);
  return {tv < 0.01, "TV " + fmt("%.4f", tv)};
}

// 12. moments over a discrete base and power sums by Monte Carlo.
Outcome moments_mc(std::uint64_t seed) {
  const PdParams p(0.5, 1.0);
  const double theta[] = {0.3, 0.7};
  const auto mom = pdp_moments(theta, p);
  Rng rng(seed, 120);
  const Truncation trunc{1e-12, 500};
  stats::Accumulator mean1, var1, cov12, third1;
  stats::Accumulator power[4];
  for (int r = 0; r < 100000; ++r) {
    const auto gem = sample_gem(p, rng, trunc);
    double p1 = 0.0;
    double sums[4] = {0.0, 0.0, 0.0, 0.0};
    for (double w : gem.weights()) {
      if (rng.uniform() < theta[0]) p1 += w;
      const double w2 = w * w;
      sums[0] += w2;
      sums[1] += w2 * w;
      sums[2] += w2 * w2;
      sums[3] += w2 * w2 * w;
    }
    // Unbroken remainder split in expectation; its effect on moments is O(R^2).
    p1 += gem.residual() * theta[0];
    const double d1 = p1 - theta[0];
    const double d2 = -d1;
    mean1.add(p1);
    var1.add(d1 * d1);
    cov12.add(d1 * d2);
    third1.add(d1 * d1 * d1);
    for (int k = 0; k < 4; ++k) power[k].add(sums[k]);
  }
  double worst_z = 0.0;
  worst_z = std::max(worst_z, mean1.z_score(mom.mean(0)));
  worst_z = std::max(worst_z, var1.z_score(mom.variance(0)));
  worst_z = std::max(worst_z, cov12.z_score(mom.covariance(0, 1)));
  worst_z = std::max(worst_z, third1.z_score(mom.third(0, 0, 0)));
  double worst_pz = 0.0;
  for (int k = 0; k < 4; ++k) worst_pz = std::max(worst_pz, power[k].z_score(power_sum_expectation(p, k + 2)));

  double match = 0.0;
  for (double a : {0.0, 0.1, 0.5, 0.9}) {
    for (double b : {0.5, 1.0, 10.0}) {
      const PdParams q(a, b);
      const double alpha = dirichlet_equivalent_concentration(q);
      match = std::max(match, rel_err(dirichlet_moments(theta, alpha).variance(0), pdp_moments(theta, q).variance(0)));
    }
  }
  const bool ok = worst_z <= 4.0 && worst_pz <= 4.0 && match <= 1e-14;
  return {ok, "moment max z " + fmt("%.2f", worst_z) + "; power-sum max z " + fmt("%.2f", worst_pz) +
                  "; Dirichlet variance match " + fmt("%.1e", match)};
}

// 13. series bounds dominate E[M].
Outcome series_bounds(std::uint64_t) {
  const long ns[] = {100, 1000, 10000, 1000000};
  double min_slack = std::numeric_limits<double>::infinity();
  std::string where;
  int points = 0;
  bool ok = true;
  auto record = [&](double bound, const SeriesExpectation& e, const std::string& label) {
    ++points;
    const double slack = bound - e.value;  // value already includes the tail allowance
    if (!(slack >= 0.0)) ok = false;
    if (slack / bound < min_slack) {
      min_slack = slack / bound;
      where = label;
    }
  };
  for (double r : {0.3, 0.5, 0.8, 0.95}) {
    for (long n : ns) {
      record(geometric_bound(r, n), series_expected_M(SeriesKind::geometric, r, n), "r=" + fmt("%g", r) + " N=" +
                                                                                          std::to_string(n));
    }
  }
  for (double s : {1.5, 2.0, 3.0}) {
    for (long n : ns) {
      record(dirichlet_series_bound(s, n), series_expected_M(SeriesKind::dirichlet, s, n),
             "s=" + fmt("%g", s) + " N=" + std::to_string(n));
    }
  }
  return {ok, std::to_string(points) + " points; min relative slack " + fmt("%.4f", min_slack) + " at " + where};
}

// 14. large-N approximation of E[M].
Outcome approximation(std::uint64_t) {
  double worst = 0.0;
  std::string detail;
  for (double a : {0.0, 0.5}) {
    const PdParams p(a, 50.0);
    const double e = rel_err(approx_expected_M(p, 10000), expected_M(p, 10000));
    worst = std::max(worst, e);
    detail += "a=" + fmt("%g", a) + " rel " + fmt("%.2e", e) + "; ";
  }
  return {worst <= 0.02, detail};
}

struct Entry {
  const char* name;
  Outcome (*run)(std::uint64_t);
};

const Entry kCriteria[] = {
    {"exact pmf", exact_pmf},
    {"aggregation oracle", aggregation},
    {"closed-form moments", closed_moments},
    {"Stirling cross-methods", stirling_cross},
    {"ratio table at N=10^4", table3},
    {"asymptotic Stirling", asymptotic},
    {"CRP exactness", crp_exact},
    {"fragmentation/coagulation", frag_coag_theorems},
    {"tree marginals", tree_marginals},
    {"discrete consistency triangle", consistency_triangle},
    {"Gibbs stationarity", gibbs_stationarity},
    {"discrete moments", moments_mc},
    {"series bounds", series_bounds},
    {"approximation quality", approximation},
};

constexpr int kCriterionCount = static_cast<int>(std::size(kCriteria));

}  // namespace

std::vector<int> suite_criteria(Suite suite) {
  if (suite == Suite::quick) return {1, 3, 4, 5, 6, 10, 14};
  std::vector<int> all(kCriterionCount);
  for (int i = 0; i < kCriterionCount; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return all;
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriterionCount) throw DomainError("no criterion " + std::to_string(id));
  const Entry& entry = kCriteria[id - 1];
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = entry.run(seed);
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {id, entry.name, out.passed, out.detail, elapsed.count()};
}

std::vector<CriterionResult> run_suite(Suite suite, std::uint64_t seed,
                                       const std::function<void(const CriterionResult&)>& progress) {
  std::vector<CriterionResult> out;
  for (int id : suite_criteria(suite)) {
    out.push_back(run_criterion(id, seed));
    if (progress) progress(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::string detail = r.detail;
  while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
  std::ostringstream s;
  s << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.name << ": " << detail << " ("
    << fmt("%.2f", r.seconds) << "s)";
  return s.str();
}

}  // namespace pdp::verify
