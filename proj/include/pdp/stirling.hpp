#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace pdp {

/// Generalized Stirling numbers S^n_{t,a} of type (-1, -a, 0):
///   S^{n+1}_t = S^n_{t-1} + (n - t a) S^n_t,  S^n_t = 0 for t > n,  S^n_0 = [n == 0].
/// For a = 0 these are the unsigned Stirling numbers of the first kind.

/// Default memory cap for table builds (bytes).
inline constexpr std::size_t kDefaultTableMemoryCap = std::size_t{1} << 31;

/// One step of the log-space linear recursion: log S^{n+1}_t from
/// log S^n_t and log S^n_{t-1}. -inf encodes S = 0.
double log_stirling_step(double log_s_t, double log_s_tm1, long n, long t, double a);

/// Cached log S^n_{t,a} for n <= n_max and t <= min(n, t_max).
///
/// Every row stores the dense zone t <= 64. Above it only rows with
/// n % stripe == 0 are kept; other coordinates are rebuilt on demand by
/// running the recursion forward from the nearest stored row below, which
/// touches O(stripe^2) entries. Stored values are bit-identical to an
/// unstriped build because both run the same fill loop.
class LogStirlingTable {
 public:
  struct Options {
    long t_max = 1000;
    long stripe = 1;
    std::size_t memory_cap_bytes = kDefaultTableMemoryCap;
  };

  static constexpr long kDenseZone = 64;

  static LogStirlingTable build(double a, long n_max, Options options);
  static LogStirlingTable build(double a, long n_max) { return build(a, n_max, Options{}); }

  /// Bytes a build with these dimensions would allocate for values.
  static std::size_t estimate_bytes(long n_max, long t_max, long stripe);

  /// log S^n_t; -inf when the number is zero. Throws CoverageError when
  /// (n, t) lies outside n <= n_max, t <= t_max.
  double log_s(long n, long t) const;

  bool stored(long n, long t) const;

  double a() const { return a_; }
  long n_max() const { return n_max_; }
  long t_max() const { return t_max_; }
  long stripe() const { return stripe_; }

  /// CSV dump "n,t,log_S" of the stored entries (t >= 1), 17 significant digits.
  void write_csv(std::ostream& out) const;

 private:
  LogStirlingTable(double a, long n_max, long t_max, long stripe);

  long width(long n) const;  // number of stored t values in row n (t = 0..width-1)
  double reconstruct(long n, long t) const;

  double a_;
  long n_max_;
  long t_max_;
  long stripe_;
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
};

/// Ratios V^n_t = S^n_t / S^n_{t-1} for 2 <= t <= min(n, t_max), filled by
///   V^n_n = 1 / U^{n-1}_{n-1},
///   V^{n+1}_t = (1 + (n - t a) V^n_t) / U^n_{t-1},
/// with U^n_1 = n - a and U^n_t = 1/V^n_t + (n - t a). No log or exp calls.
class StirlingRatioTable {
 public:
  struct Options {
    long t_max = 1000;
    std::size_t memory_cap_bytes = kDefaultTableMemoryCap;
  };

  static StirlingRatioTable build(double a, long n_max, Options options);
  static StirlingRatioTable build(double a, long n_max) { return build(a, n_max, Options{}); }

  static std::size_t estimate_bytes(long n_max, long t_max);

  /// V^n_t, 2 <= t <= min(n, t_max), n <= n_max.
  double v(long n, long t) const;
  /// U^n_t = S^{n+1}_t / S^n_t, 1 <= t <= min(n, t_max), n <= n_max.
  double u(long n, long t) const;

  bool covers(long n, long t) const;

  double a() const { return a_; }
  long n_max() const { return n_max_; }
  long t_max() const { return t_max_; }

  /// CSV dump "n,t,V", 17 significant digits.
  void write_csv(std::ostream& out) const;

 private:
  StirlingRatioTable(double a, long n_max, long t_max);

  double a_;
  long n_max_;
  long t_max_;
  std::vector<std::size_t> offsets_;  // row n starts at offsets_[n], holds t = 2..min(n, t_max)
  std::vector<double> values_;
};

/// Largest m accepted by the explicit alternating-sum formula.
inline constexpr long kExplicitMaxM = 25;

/// log S^n_{m,a} from the explicit alternating sum
///   (1 / (m! a^m)) sum_j C(m,j) (-1)^j prod_{h<n} (h - a j),
/// accumulated as signed log magnitudes. Requires a > 0 and m <= 25; throws
/// NumericalInstability when cancellation leaves less than ~6 digits.
double log_stirling_explicit(long n, long m, double a);
double stirling_explicit(long n, long m, double a);

struct AsymptoticStirling {
  double log_value;
  /// M / N^a, the scale of the relative error.
  double error_scale;
  /// False outside the accuracy domain M << N^a.
  bool reliable;
};

/// log of Gamma(N) / (Gamma(1-a) Gamma(M) a^{M-1} N^a), the N -> infinity
/// form for fixed M and a > 0.
AsymptoticStirling stirling_asymptotic(long n, long m, double a);

/// log S^n_m through the multiplicative recursion
///   sum_{n'} C(n, n') / C(m, k) S^{n'}_k S^{n-n'}_{m-k}
/// using factors from `table`. Consistency oracle only.
double mult_recursion_check(long n, long m, double a, long split_k, const LogStirlingTable& table);
double mult_recursion_check(long n, long m, double a, long split_k);

}  // namespace pdp
