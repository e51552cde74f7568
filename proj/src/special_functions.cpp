#include "pdp/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "pdp/error.hpp"

namespace pdp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Lanczos coefficients for g = 607/128, 15 terms.
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

// Bernoulli numbers B_{2k} for the asymptotic expansions.
constexpr std::array<double, 8> kBernoulli = {1.0 / 6,     -1.0 / 30,   1.0 / 42,
                                              -1.0 / 30,   5.0 / 66,    -691.0 / 2730,
                                              7.0 / 6,     -3617.0 / 510};

constexpr double kShift = 6.0;

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
  if (x == 1.0 || x == 2.0) return 0.0;
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : kLanczos) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma requires x > 0");
  double acc = 0.0;
  while (x < kShift) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ log x - 1/(2x) - sum B_{2k} / (2k x^{2k})
  const double inv2 = 1.0 / (x * x);
  double pow = inv2;
  double series = 0.0;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    series += kBernoulli[k] / (2.0 * static_cast<double>(k + 1)) * pow;
    pow *= inv2;
  }
  return acc + std::log(x) - 0.5 / x - series;
}

double trigamma(double x) {
  if (!(x > 0.0)) throw DomainError("trigamma requires x > 0");
  double acc = 0.0;
  while (x < kShift) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  // psi_1(x) ~ 1/x + 1/(2x^2) + sum B_{2k} / x^{2k+1}
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double pow = inv2 * inv;
  double series = 0.0;
  for (double bk : kBernoulli) {
    series += bk * pow;
    pow *= inv2;
  }
  return acc + inv + 0.5 * inv2 + series;
}

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0)) throw DomainError("zeta requires s > 1");
  if (!(q > 0.0)) throw DomainError("hurwitz zeta requires q > 0");
  // Direct terms up to q + kTerms, then Euler-Maclaurin for the tail.
  constexpr int kTerms = 16;
  double sum = 0.0;
  for (int k = 0; k < kTerms; ++k) sum += std::pow(q + k, -s);
  const double x = q + kTerms;
  double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  // Correction terms B_{2j}/(2j)! * s(s+1)...(s+2j-2) x^{-s-2j+1}
  double rising = s;
  double factorial = 2.0;
  double xpow = std::pow(x, -s - 1.0);
  for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
    tail += kBernoulli[j] / factorial * rising * xpow;
    const double m = 2.0 * static_cast<double>(j + 1);
    rising *= (s + m - 1.0) * (s + m);
    factorial *= (m + 1.0) * (m + 2.0);
    xpow /= x * x;
  }
  return sum + tail;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

double log_binomial(long n, long k) {
  if (k < 0 || k > n) throw DomainError("log_binomial requires 0 <= k <= n");
  if (k == 0 || k == n) return 0.0;
  return log_gamma(static_cast<double>(n) + 1.0) - log_gamma(static_cast<double>(k) + 1.0) -
         log_gamma(static_cast<double>(n - k) + 1.0);
}

double log_add(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  if (x < y) std::swap(x, y);
  return x + std::log1p(std::exp(y - x));
}

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return kNegInf;
  const double mx = *std::max_element(xs.begin(), xs.end());
  if (mx == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double v : xs) acc += std::exp(v - mx);
  return mx + std::log(acc);
}

}  // namespace pdp
