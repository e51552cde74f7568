#include "pdp/stirling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "pdp/core.hpp"
#include "pdp/error.hpp"
#include "pdp/special_functions.hpp"

namespace pdp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_discount(double a) {
  if (!(a >= 0.0 && a < 1.0)) throw DomainError("discount must satisfy 0 <= a < 1");
}

void check_cap(std::size_t bytes, std::size_t cap) {
  if (bytes > cap) {
    throw ResourceLimit("table needs " + std::to_string(bytes) + " bytes, cap is " +
                        std::to_string(cap));
  }
}

}  // namespace

double log_stirling_step(double log_s_t, double log_s_tm1, long n, long t, double a) {
  if (log_s_t == kNegInf) return log_s_tm1;
  const double coeff = static_cast<double>(n) - static_cast<double>(t) * a;
  if (log_s_tm1 == kNegInf) return log_s_t + std::log(coeff);
  const double d = log_s_tm1 - log_s_t;
  if (d > 30.0) return log_s_tm1 + std::log1p(coeff * std::exp(-d));
  return log_s_t + std::log(std::exp(d) + coeff);
}

// ---------------------------------------------------------------------------
// LogStirlingTable

LogStirlingTable::LogStirlingTable(double a, long n_max, long t_max, long stripe)
    : a_(a), n_max_(n_max), t_max_(t_max), stripe_(stripe) {}

long LogStirlingTable::width(long n) const {
  const long full = std::min(n, t_max_);
  const long dense = std::min(full, kDenseZone);
  return (n % stripe_ == 0 ? full : dense) + 1;
}

std::size_t LogStirlingTable::estimate_bytes(long n_max, long t_max, long stripe) {
  std::size_t entries = 0;
  for (long n = 0; n <= n_max; ++n) {
    const long full = std::min(n, t_max);
    const long dense = std::min(full, kDenseZone);
    entries += static_cast<std::size_t>((n % stripe == 0 ? full : dense) + 1);
  }
  return entries * sizeof(double);
}

LogStirlingTable LogStirlingTable::build(double a, long n_max, Options options) {
  check_discount(a);
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (options.t_max < 1) throw DomainError("t_max must be at least 1");
  if (options.stripe < 1) throw DomainError("stripe must be at least 1");
  check_cap(estimate_bytes(n_max, options.t_max, options.stripe), options.memory_cap_bytes);

  LogStirlingTable table(a, n_max, options.t_max, options.stripe);
  table.offsets_.resize(static_cast<std::size_t>(n_max) + 2);
  std::size_t total = 0;
  for (long n = 0; n <= n_max; ++n) {
    table.offsets_[static_cast<std::size_t>(n)] = total;
    total += static_cast<std::size_t>(table.width(n));
  }
  table.offsets_[static_cast<std::size_t>(n_max) + 1] = total;
  table.values_.resize(total);

  std::vector<double> row(static_cast<std::size_t>(options.t_max) + 1, kNegInf);
  row[0] = 0.0;
  auto store = [&](long n) {
    const auto w = static_cast<std::size_t>(table.width(n));
    std::copy_n(row.begin(), w, table.values_.begin() + static_cast<std::ptrdiff_t>(table.offsets_[static_cast<std::size_t>(n)]));
  };
  store(0);
  for (long n = 0; n < n_max; ++n) {
    const long top = std::min(n + 1, options.t_max);
    for (long t = top; t >= 1; --t) {
      const auto ut = static_cast<std::size_t>(t);
      row[ut] = log_stirling_step(row[ut], row[ut - 1], n, t, a);
    }
    row[0] = kNegInf;
    store(n + 1);
  }
  return table;
}

bool LogStirlingTable::stored(long n, long t) const {
  return n >= 0 && n <= n_max_ && t >= 0 && t < width(n);
}

double LogStirlingTable::log_s(long n, long t) const {
  if (n < 0 || t < 0) throw DomainError("Stirling indices must be non-negative");
  if (t > n) return kNegInf;
  if (n > n_max_ || t > t_max_) throw CoverageError("Stirling table does not cover", n, t);
  if (t < width(n)) return values_[offsets_[static_cast<std::size_t>(n)] + static_cast<std::size_t>(t)];
  return reconstruct(n, t);
}

double LogStirlingTable::reconstruct(long n, long t) const {
  const long base = n - n % stripe_;
  const long steps = n - base;
  const long lo = t - steps;
  // window[u - lo] holds log S^{row}_u for u in [lo, t]
  std::vector<double> window(static_cast<std::size_t>(steps) + 1, kNegInf);
  const std::size_t off = offsets_[static_cast<std::size_t>(base)];
  const long base_width = width(base);
  for (long u = std::max(lo, 0L); u <= t; ++u) {
    if (u < base_width) window[static_cast<std::size_t>(u - lo)] = values_[off + static_cast<std::size_t>(u)];
  }
  for (long s = 0; s < steps; ++s) {
    const long row = base + s;
    for (long u = t; u >= lo + s + 1; --u) {
      const auto i = static_cast<std::size_t>(u - lo);
      if (u <= 0) {
        window[i] = kNegInf;
        continue;
      }
      window[i] = log_stirling_step(window[i], window[i - 1], row, u, a_);
    }
  }
  return window[static_cast<std::size_t>(steps)];
}

void LogStirlingTable::write_csv(std::ostream& out) const {
  const auto old = out.precision(17);
  out << "n,t,log_S\n";
  for (long n = 1; n <= n_max_; ++n) {
    const long w = width(n);
    for (long t = 1; t < w; ++t) {
      out << n << ',' << t << ',' << values_[offsets_[static_cast<std::size_t>(n)] + static_cast<std::size_t>(t)] << '\n';
    }
  }
  out.precision(old);
}

// ---------------------------------------------------------------------------
// StirlingRatioTable

StirlingRatioTable::StirlingRatioTable(double a, long n_max, long t_max)
    : a_(a), n_max_(n_max), t_max_(t_max) {}

std::size_t StirlingRatioTable::estimate_bytes(long n_max, long t_max) {
  std::size_t entries = 0;
  for (long n = 2; n <= n_max; ++n) entries += static_cast<std::size_t>(std::max(0L, std::min(n, t_max) - 1));
  return entries * sizeof(double);
}

StirlingRatioTable StirlingRatioTable::build(double a, long n_max, Options options) {
  check_discount(a);
  if (n_max < 2) throw DomainError("ratio table needs n_max >= 2");
  if (options.t_max < 2) throw DomainError("ratio table needs t_max >= 2");
  check_cap(estimate_bytes(n_max, options.t_max), options.memory_cap_bytes);

  StirlingRatioTable table(a, n_max, options.t_max);
  table.offsets_.assign(static_cast<std::size_t>(n_max) + 2, 0);
  std::size_t total = 0;
  for (long n = 0; n <= n_max; ++n) {
    table.offsets_[static_cast<std::size_t>(n)] = total;
    if (n >= 2) total += static_cast<std::size_t>(std::min(n, options.t_max) - 1);
  }
  table.offsets_[static_cast<std::size_t>(n_max) + 1] = total;
  table.values_.resize(total);

  // U^n_{t} from row n of V, computed inline to keep the loop transcendental-free.
  auto u_of = [&](long n, long t) {
    if (t == 1) return static_cast<double>(n) - a;
    return 1.0 / table.values_[table.offsets_[static_cast<std::size_t>(n)] + static_cast<std::size_t>(t - 2)] +
           (static_cast<double>(n) - static_cast<double>(t) * a);
  };
  for (long n = 1; n < n_max; ++n) {
    const std::size_t next = table.offsets_[static_cast<std::size_t>(n + 1)];
    const long top = std::min(n, options.t_max);
    for (long t = 2; t <= top; ++t) {
      const double v = table.values_[table.offsets_[static_cast<std::size_t>(n)] + static_cast<std::size_t>(t - 2)];
      table.values_[next + static_cast<std::size_t>(t - 2)] =
          (1.0 + (static_cast<double>(n) - static_cast<double>(t) * a) * v) / u_of(n, t - 1);
    }
    if (n + 1 <= options.t_max) {
      table.values_[next + static_cast<std::size_t>(n - 1)] = 1.0 / u_of(n, n);
    }
  }
  return table;
}

bool StirlingRatioTable::covers(long n, long t) const {
  return n >= 2 && n <= n_max_ && t >= 2 && t <= std::min(n, t_max_);
}

double StirlingRatioTable::v(long n, long t) const {
  if (!covers(n, t)) throw CoverageError("ratio table does not cover V", n, t);
  return values_[offsets_[static_cast<std::size_t>(n)] + static_cast<std::size_t>(t - 2)];
}

double StirlingRatioTable::u(long n, long t) const {
  if (t == 1 && n >= 1 && n <= n_max_) return static_cast<double>(n) - a_;
  if (!covers(n, t)) throw CoverageError("ratio table does not cover U", n, t);
  return 1.0 / v(n, t) + (static_cast<double>(n) - static_cast<double>(t) * a_);
}

void StirlingRatioTable::write_csv(std::ostream& out) const {
  const auto old = out.precision(17);
  out << "n,t,V\n";
  for (long n = 2; n <= n_max_; ++n) {
    const long top = std::min(n, t_max_);
    for (long t = 2; t <= top; ++t) out << n << ',' << t << ',' << v(n, t) << '\n';
  }
  out.precision(old);
}

// ---------------------------------------------------------------------------
// Closed forms

double log_stirling_explicit(long n, long m, double a) {
  if (a == 0.0) throw DomainError("explicit formula needs a > 0; use the recursion or a table for a = 0");
  check_discount(a);
  if (m < 0 || n < 0) throw DomainError("Stirling indices must be non-negative");
  if (m > kExplicitMaxM) {
    throw DomainError("explicit formula limited to m <= " + std::to_string(kExplicitMaxM));
  }
  if (m > n) return kNegInf;
  if (m == 0) return n == 0 ? 0.0 : kNegInf;

  std::vector<SignedLog> terms;
  terms.reserve(static_cast<std::size_t>(m) + 1);
  for (long j = 0; j <= m; ++j) {
    int sign = (j % 2 == 0) ? 1 : -1;
    double acc = log_binomial(m, j);
    bool zero = false;
    for (long h = 0; h < n; ++h) {
      const double f = static_cast<double>(h) - a * static_cast<double>(j);
      if (f == 0.0) {
        zero = true;
        break;
      }
      if (f < 0.0) sign = -sign;
      acc += std::log(std::abs(f));
    }
    if (!zero) terms.push_back({sign, acc});
  }
  double mx = kNegInf;
  for (const auto& term : terms) mx = std::max(mx, term.log_abs);
  double sum = 0.0;
  double magnitude = 0.0;
  for (const auto& term : terms) {
    const double w = std::exp(term.log_abs - mx);
    sum += term.sign * w;
    magnitude += w;
  }
  // Each term carries ~n rounding errors; cancellation amplifies them by magnitude/|sum|.
  const double eps = std::numeric_limits<double>::epsilon();
  const double estimated_error = magnitude * static_cast<double>(n + m) * eps / std::abs(sum);
  if (!(sum > 0.0) || estimated_error > 1e-6) {
    throw NumericalInstability("explicit Stirling sum cancels catastrophically at n=" +
                               std::to_string(n) + ", m=" + std::to_string(m));
  }
  return mx + std::log(sum) - log_gamma(static_cast<double>(m) + 1.0) -
         static_cast<double>(m) * std::log(a);
}

double stirling_explicit(long n, long m, double a) { return std::exp(log_stirling_explicit(n, m, a)); }

AsymptoticStirling stirling_asymptotic(long n, long m, double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("asymptotic form needs 0 < a < 1");
  if (m < 1 || n < 1) throw DomainError("asymptotic form needs n, m >= 1");
  const auto nd = static_cast<double>(n);
  const auto md = static_cast<double>(m);
  const double value = log_gamma(nd) - log_gamma(1.0 - a) - log_gamma(md) - (md - 1.0) * std::log(a) -
                       a * std::log(nd);
  const double scale = md / std::pow(nd, a);
  return {value, scale, scale < 0.1};
}

double mult_recursion_check(long n, long m, double a, long split_k, const LogStirlingTable& table) {
  if (!(split_k > 0 && split_k < m)) throw DomainError("split must satisfy 0 < k < m");
  if (m > n) throw DomainError("multiplicative recursion needs m <= n");
  if (table.a() != a) throw DomainError("table discount does not match");
  const double norm = log_binomial(m, split_k);
  std::vector<double> terms;
  for (long part = split_k; part <= n - m + split_k; ++part) {
    terms.push_back(log_binomial(n, part) - norm + table.log_s(part, split_k) +
                    table.log_s(n - part, m - split_k));
  }
  return log_sum_exp(terms);
}

double mult_recursion_check(long n, long m, double a, long split_k) {
  check_discount(a);
  const auto table = LogStirlingTable::build(a, std::max(n, 1L), {.t_max = std::max(m, 1L)});
  return mult_recursion_check(n, m, a, split_k, table);
}

}  // namespace pdp
