#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "pdp/error.hpp"

namespace pdp {

/// Discount/concentration pair (a, b) of a two-parameter Poisson-Dirichlet
/// model. Valid when 0 <= a < 1 and b > -a. Negative concentrations such as
/// (a1, -a1*a2) used inside fragmentation and tree sampling fall inside this
/// domain, as does b = 0 for a > 0.
class PdParams {
 public:
  PdParams(double discount, double concentration);

  double a() const { return a_; }
  double b() const { return b_; }

  /// True for the Dirichlet-process case a = 0.
  bool dirichlet() const { return a_ == 0.0; }

  static bool valid(double discount, double concentration);

 private:
  double a_;
  double b_;
};

/// A partition of {1..N} in size-biased normal form. Block labels are
/// 1-based and numbered by first occurrence.
class SizeBiasedPartition {
 public:
  /// Validates that `assignments` is already in size-biased form.
  explicit SizeBiasedPartition(std::vector<int> assignments);

  const std::vector<int>& assignments() const { return assignments_; }
  /// Occurrence count of each block, in block order.
  const std::vector<int>& counts() const { return counts_; }
  /// Number of blocks M.
  int size() const { return static_cast<int>(counts_.size()); }
  /// Number of items N.
  int items() const { return static_cast<int>(assignments_.size()); }

  /// Blocks as sets of 1-based item ids, each ascending.
  std::vector<std::vector<int>> blocks() const;

  friend bool operator==(const SizeBiasedPartition& lhs, const SizeBiasedPartition& rhs) {
    return lhs.assignments_ == rhs.assignments_;
  }
  friend auto operator<=>(const SizeBiasedPartition& lhs, const SizeBiasedPartition& rhs) {
    return lhs.assignments_ <=> rhs.assignments_;
  }

 private:
  std::vector<int> assignments_;
  std::vector<int> counts_;
};

/// Latent table counts t_m for the distinct values of a discrete sample.
class MultiplicityVector {
 public:
  explicit MultiplicityVector(std::vector<int> t);

  const std::vector<int>& values() const { return t_; }
  int size() const { return static_cast<int>(t_.size()); }
  long total() const { return total_; }

  /// Throws DomainError unless 1 <= t_m <= n_m for every block.
  void check_against(std::span<const int> counts) const;

 private:
  std::vector<int> t_;
  long total_ = 0;
};

/// Per-item table indicators r_n (1 = item opened a table).
class IndicatorVector {
 public:
  explicit IndicatorVector(std::vector<std::uint8_t> r);

  const std::vector<std::uint8_t>& values() const { return r_; }
  int size() const { return static_cast<int>(r_.size()); }

  /// t_k = sum of r_n over items whose value is block k of `data`.
  /// Every block must receive at least one indicator.
  MultiplicityVector multiplicities(const SizeBiasedPartition& data) const;

 private:
  std::vector<std::uint8_t> r_;
};

/// Relabels an arbitrary index sequence 1, 2, 3, ... by first occurrence.
template <class T>
SizeBiasedPartition canonicalize(std::span<const T> indices) {
  if (indices.empty()) throw DomainError("empty sequence");
  std::map<T, int> label;
  std::vector<int> out;
  out.reserve(indices.size());
  for (const T& k : indices) {
    auto [it, inserted] = label.try_emplace(k, static_cast<int>(label.size()) + 1);
    out.push_back(it->second);
  }
  return SizeBiasedPartition(std::move(out));
}

inline SizeBiasedPartition canonicalize(const std::vector<long long>& indices) {
  return canonicalize(std::span<const long long>(indices));
}

inline constexpr int kMaxEnumerationItems = 12;

/// Visits every set partition of {1..n} once, as restricted growth strings
/// (which are exactly the size-biased normal forms). 1 <= n <= 12.
void for_each_partition(int n, const std::function<void(const SizeBiasedPartition&)>& visit);

/// All set partitions of {1..n}; Bell(n) entries. 1 <= n <= 12.
std::vector<SizeBiasedPartition> enumerate_partitions(int n);

/// log of (x)_n = x (x+1) ... (x+n-1).
double log_pochhammer(double x, long n);

/// log of (x|y)_n = x (x+y) ... (x+(n-1)y). Every factor must be positive;
/// a zero factor raises DegeneratePochhammer, a negative one DomainError.
double log_pochhammer_inc(double x, double y, long n);

/// Sign and log-magnitude of a real number.
struct SignedLog {
  int sign = 1;
  double log_abs = 0.0;

  double value() const;
};

/// (x|y)_n as (sign, log|value|). Negative factors are allowed; a zero
/// factor still raises DegeneratePochhammer.
SignedLog signed_log_pochhammer_inc(double x, double y, long n);

}  // namespace pdp
