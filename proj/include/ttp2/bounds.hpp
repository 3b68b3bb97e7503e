#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ttp2 {

// Smallest k with 2^k >= x, for x >= 1.
inline int ceil_log2(std::int64_t x) {
  if (x < 1) throw std::invalid_argument("ceil_log2 needs a positive argument");
  int k = 0;
  while ((std::int64_t{1} << k) < x) ++k;
  return k;
}

inline void require_multiple_of_four(int n) {
  if (n < 8 || n % 4 != 0)
    throw std::invalid_argument("n must be divisible by 4 and at least 8, got " + std::to_string(n));
}

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator<(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return a.num * b.den <= b.num * a.den; }
};

inline Fraction reduced(std::int64_t num, std::int64_t den) {
  auto g = std::gcd(num, den);
  return {num / g, den / g};
}

// Number of Type-2 blocks the construction may use: (n/8) * ceil(log2(n/4)).
inline Fraction flip_budget_exact(int n) {
  require_multiple_of_four(n);
  return reduced(static_cast<std::int64_t>(n) * ceil_log2(n / 4), 8);
}

inline double flip_budget(int n) { return flip_budget_exact(n).value(); }

inline int flip_budget_ceil(int n) {
  auto f = flip_budget_exact(n);
  return static_cast<int>((f.num + f.den - 1) / f.den);
}

// Guaranteed approximation ratio of the construction on metric instances.
inline Fraction factor_ours_exact(int n) {
  require_multiple_of_four(n);
  // 1 + (ceil(log2(n/4)) + 4) / (2(n-2))
  std::int64_t den = 2 * static_cast<std::int64_t>(n - 2);
  return reduced(den + ceil_log2(n / 4) + 4, den);
}

inline double factor_ours(int n) { return factor_ours_exact(n).value(); }

// Ratio of the earlier matching-based construction: 1 + 2/(n-2) + 2/n.
inline Fraction factor_xiao_kou_exact(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("n must be even and at least 4");
  std::int64_t a = n - 2, b = n;
  return reduced(a * b + 2 * b + 2 * a, a * b);
}

inline double factor_xiao_kou(int n) { return factor_xiao_kou_exact(n).value(); }

}  // namespace ttp2
