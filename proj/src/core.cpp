#include "pdp/core.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "pdp/special_functions.hpp"

namespace pdp {

namespace {

// Below this length Pochhammer products are summed factor by factor.
constexpr long kDirectPochhammer = 64;

std::string fmt_params(double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << "(a=" << a << ", b=" << b << ")";
  return os.str();
}

}  // namespace

PdParams::PdParams(double discount, double concentration) : a_(discount), b_(concentration) {
  if (!valid(discount, concentration)) {
    throw DomainError("invalid parameters " + fmt_params(discount, concentration) +
                      ": need 0 <= a < 1 and b > -a");
  }
}

bool PdParams::valid(double discount, double concentration) {
  return std::isfinite(discount) && std::isfinite(concentration) && discount >= 0.0 &&
         discount < 1.0 && concentration > -discount;
}

SizeBiasedPartition::SizeBiasedPartition(std::vector<int> assignments)
    : assignments_(std::move(assignments)) {
  if (assignments_.empty()) throw DomainError("empty sequence");
  int max_label = 0;
  for (std::size_t n = 0; n < assignments_.size(); ++n) {
    const int k = assignments_[n];
    if (k < 1 || k > max_label + 1) {
      throw DomainError("assignment " + std::to_string(k) + " at position " +
                        std::to_string(n + 1) + " is not in size-biased order");
    }
    if (k == max_label + 1) {
      ++max_label;
      counts_.push_back(0);
    }
    ++counts_[static_cast<std::size_t>(k - 1)];
  }
}

std::vector<std::vector<int>> SizeBiasedPartition::blocks() const {
  std::vector<std::vector<int>> out(counts_.size());
  for (std::size_t m = 0; m < counts_.size(); ++m) out[m].reserve(static_cast<std::size_t>(counts_[m]));
  for (std::size_t n = 0; n < assignments_.size(); ++n) {
    out[static_cast<std::size_t>(assignments_[n] - 1)].push_back(static_cast<int>(n) + 1);
  }
  return out;
}

MultiplicityVector::MultiplicityVector(std::vector<int> t) : t_(std::move(t)) {
  for (int v : t_) {
    if (v < 1) throw DomainError("multiplicities must be positive");
    total_ += v;
  }
}

void MultiplicityVector::check_against(std::span<const int> counts) const {
  if (counts.size() != t_.size()) {
    throw DomainError("multiplicity vector has " + std::to_string(t_.size()) +
                      " entries for " + std::to_string(counts.size()) + " blocks");
  }
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (t_[m] > counts[m]) {
      throw DomainError("multiplicity " + std::to_string(t_[m]) + " exceeds count " +
                        std::to_string(counts[m]) + " in block " + std::to_string(m + 1));
    }
  }
}

IndicatorVector::IndicatorVector(std::vector<std::uint8_t> r) : r_(std::move(r)) {
  for (auto v : r_) {
    if (v > 1) throw DomainError("table indicators must be 0 or 1");
  }
}

MultiplicityVector IndicatorVector::multiplicities(const SizeBiasedPartition& data) const {
  if (data.items() != size()) {
    throw DomainError("indicator vector length does not match the sample size");
  }
  std::vector<int> t(static_cast<std::size_t>(data.size()), 0);
  for (std::size_t n = 0; n < r_.size(); ++n) {
    t[static_cast<std::size_t>(data.assignments()[n] - 1)] += r_[n];
  }
  for (std::size_t m = 0; m < t.size(); ++m) {
    if (t[m] == 0) {
      throw DomainError("value " + std::to_string(m + 1) + " has no table indicator set");
    }
  }
  return MultiplicityVector(std::move(t));
}

void for_each_partition(int n, const std::function<void(const SizeBiasedPartition&)>& visit) {
  if (n < 1 || n > kMaxEnumerationItems) {
    throw DomainError("enumeration needs 1 <= N <= " + std::to_string(kMaxEnumerationItems));
  }
  // Restricted growth strings in lexicographic order; prefix_max[i] is the
  // largest label among positions 0..i.
  std::vector<int> rgs(static_cast<std::size_t>(n), 1);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 1);
  while (true) {
    visit(SizeBiasedPartition(rgs));
    int i = n - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) return;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (int j = i + 1; j < n; ++j) {
      rgs[j] = 1;
      prefix_max[j] = prefix_max[i];
    }
  }
}

std::vector<SizeBiasedPartition> enumerate_partitions(int n) {
  std::vector<SizeBiasedPartition> out;
  for_each_partition(n, [&](const SizeBiasedPartition& p) { out.push_back(p); });
  return out;
}

double log_pochhammer(double x, long n) { return log_pochhammer_inc(x, 1.0, n); }

double log_pochhammer_inc(double x, double y, long n) {
  const SignedLog r = signed_log_pochhammer_inc(x, y, n);
  if (r.sign < 0) throw DomainError("Pochhammer product is negative; use the signed variant");
  return r.log_abs;
}

double SignedLog::value() const { return sign * std::exp(log_abs); }

SignedLog signed_log_pochhammer_inc(double x, double y, long n) {
  if (n < 0) throw DomainError("Pochhammer length must be non-negative");
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("Pochhammer arguments must be finite");
  if (n == 0) return {1, 0.0};
  if (y == 0.0) {
    if (x == 0.0) throw DegeneratePochhammer("degenerate Pochhammer: zero factor");
    return {(x < 0.0 && n % 2 == 1) ? -1 : 1, static_cast<double>(n) * std::log(std::abs(x))};
  }
  const double last = x + static_cast<double>(n - 1) * y;
  const bool all_positive = x > 0.0 && last > 0.0;
  if (all_positive && y > 0.0 && n > kDirectPochhammer) {
    // (x|y)_n = y^n Gamma(x/y + n) / Gamma(x/y)
    const double z = x / y;
    return {1, static_cast<double>(n) * std::log(y) + log_gamma(z + static_cast<double>(n)) -
                   log_gamma(z)};
  }
  int sign = 1;
  double acc = 0.0;
  for (long i = 0; i < n; ++i) {
    const double f = x + static_cast<double>(i) * y;
    if (f == 0.0) throw DegeneratePochhammer("degenerate Pochhammer: zero factor at i=" + std::to_string(i));
    if (f < 0.0) sign = -sign;
    acc += std::log(std::abs(f));
  }
  return {sign, acc};
}

}  // namespace pdp
