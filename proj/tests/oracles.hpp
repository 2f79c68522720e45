#pragma once

// Brute-force reference implementations. Nothing here calls into the
// library's sieve or pair-enumeration code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

// Trial-division factorization: (prime, exponent) pairs, increasing.
inline std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline int big_omega(std::uint64_t n) {
  int total = 0;
  for (const auto& [p, e] : factor(n)) total += e;
  return total;
}

inline int big_omega_upto(std::uint64_t n, std::uint64_t t) {
  int total = 0;
  for (const auto& [p, e] : factor(n)) {
    if (p <= t) total += e;
  }
  return total;
}

inline int omega_upto(std::uint64_t n, std::uint64_t t) {
  int total = 0;
  for (const auto& [p, e] : factor(n)) {
    if (p <= t) ++total;
  }
  return total;
}

// omega(m, t) <= log log t / log 4 + slack checked at every integer t in
// [3, t_max]. omega(m, .) is constant between integers and the bound is
// increasing, so integer t covers every real t.
inline bool growth_dense(std::uint64_t m, std::uint64_t t_max, double slack) {
  const double log4 = std::log(4.0);
  const auto f = factor(m);
  for (std::uint64_t t = 3; t <= t_max; ++t) {
    int count = 0;
    for (const auto& [p, e] : f) {
      if (p <= t) ++count;
    }
    if (count > std::log(std::log(static_cast<double>(t))) / log4 + slack) return false;
  }
  return true;
}

inline std::uint64_t multiplication_table(std::uint64_t n) {
  std::vector<std::uint64_t> products;
  products.reserve(n * n);
  for (std::uint64_t a = 1; a <= n; ++a) {
    for (std::uint64_t b = 1; b <= n; ++b) products.push_back(a * b);
  }
  std::sort(products.begin(), products.end());
  return static_cast<std::uint64_t>(std::unique(products.begin(), products.end()) - products.begin());
}

inline std::uint64_t product_set_size(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::set<std::uint64_t> products;
  for (const auto x : a) {
    for (const auto y : b) products.insert(x * y);
  }
  return products.size();
}

// Quartic count of b1 b2 = b3 b4.
inline std::uint64_t energy_quartic(const std::vector<std::uint64_t>& b) {
  std::uint64_t count = 0;
  for (const auto b1 : b)
    for (const auto b2 : b)
      for (const auto b3 : b)
        for (const auto b4 : b) count += (b1 * b2 == b3 * b4) ? 1 : 0;
  return count;
}

}  // namespace oracle
